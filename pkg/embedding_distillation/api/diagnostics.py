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
import embedding_distillation.gradient_suite as gradient_suite


def run_gradient_checks(cases=None, points_per_case=constants.GRAD_CHECK_POINTS, seed=0) -> list:
    return gradient_suite.run_gradient_suite(cases, points_per_case, seed)


def get_failed_checks(rows) -> list:
    return [row for row in rows if not row.passed]
