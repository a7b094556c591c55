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

from embedding_distillation.sweep import sweep_result
from embedding_distillation.sweep import lambda_sweep

from embedding_distillation.sweep.sweep_result import (
    SweepRunResult,
    SweepRow,
    SweepTable,
)
from embedding_distillation.sweep.lambda_sweep import (
    SweepJob,
    LambdaSweep,
    run_sweep_job,
)

__all__ = [
    "SweepRunResult",
    "SweepRow",
    "SweepTable",
    "SweepJob",
    "LambdaSweep",
    "run_sweep_job",
]
