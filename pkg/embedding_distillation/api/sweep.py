#  This file is part of EmbeddingDistillation
#
#  EmbeddingDistillation is free software; you can redistribute it and/or
#  modify it under the terms of the GNU General Public License
#  as published by the Free Software Foundation; either
#  version 3.0 of the License, or (at your option) any later version.
#
#  EmbeddingDistillation is distributed in the hope that it will be useful,
#  but WITHOUT ANY WARRANTY; without even the implied warranty of
#  MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the GNU
#  General Public License for more details.
#
#  You should have received a copy of the GNU General Public
#  License along with EmbeddingDistillation. If not, see <https://www.gnu.org/licenses/>.
import embedding_distillation.constants as constants
import embedding_distillation.sweep as sweep


def create_lambda_sweep(teachers_by_seed: dict, dataset, student_config, train_config_by_seed: dict,
                        lambda_values, jobs=constants.DEFAULT_JOBS) -> sweep.LambdaSweep:
    return sweep.LambdaSweep(teachers_by_seed, dataset, student_config, train_config_by_seed, lambda_values, jobs)


async def run_lambda_sweep(lambda_sweep: sweep.LambdaSweep) -> sweep.SweepTable:
    return await lambda_sweep.run()


def is_lambda_sweep_computing(lambda_sweep: sweep.LambdaSweep) -> bool:
    return lambda_sweep.is_computing


def get_lambda_sweep_results(lambda_sweep: sweep.LambdaSweep) -> list:
    return lambda_sweep.run_results
