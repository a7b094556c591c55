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

from embedding_distillation.api import experiments
from embedding_distillation.api import sweep
from embedding_distillation.api import diagnostics

from embedding_distillation.api.experiments import (
    load_experiment,
    write_config_snapshot,
    load_dataset,
    load_csv_dataset,
    train_teacher,
    distill_student,
    evaluate_net,
    save_net,
    load_net,
    get_net_digest,
    export_embeddings,
)
from embedding_distillation.api.sweep import (
    create_lambda_sweep,
    run_lambda_sweep,
    is_lambda_sweep_computing,
    get_lambda_sweep_results,
)
from embedding_distillation.api.diagnostics import (
    run_gradient_checks,
    get_failed_checks,
)

__all__ = [
    "load_experiment",
    "write_config_snapshot",
    "load_dataset",
    "load_csv_dataset",
    "train_teacher",
    "distill_student",
    "evaluate_net",
    "save_net",
    "load_net",
    "get_net_digest",
    "export_embeddings",
    "create_lambda_sweep",
    "run_lambda_sweep",
    "is_lambda_sweep_computing",
    "get_lambda_sweep_results",
    "run_gradient_checks",
    "get_failed_checks",
]
