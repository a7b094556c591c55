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

# optimizer first: the loss package imports it while trainer is still initializing
from embedding_distillation.trainer import optimizer
from embedding_distillation.trainer import train_config
from embedding_distillation.trainer import metrics_log
from embedding_distillation.trainer import steps
from embedding_distillation.trainer import trainer

from embedding_distillation.trainer.optimizer import (
    OptimizerState,
    adam_step,
)
from embedding_distillation.trainer.train_config import (
    SemiSupervisedConfig,
    TrainConfig,
)
from embedding_distillation.trainer.metrics_log import (
    EpochMetrics,
    MetricsLog,
    read_metrics_log,
)
from embedding_distillation.trainer.steps import (
    InputViews,
    RoutingEntry,
    RoutingAudit,
    StepResult,
    check_tap_pairs,
    check_embedding_dims,
    distillation_step,
    semi_supervised_step,
    cross_quality_step,
)
from embedding_distillation.trainer.trainer import (
    TrainingResult,
    EmbeddingTrainer,
    validation_recall_at_1,
    train_teacher,
    distill_student,
)

__all__ = [
    "OptimizerState",
    "adam_step",
    "SemiSupervisedConfig",
    "TrainConfig",
    "EpochMetrics",
    "MetricsLog",
    "read_metrics_log",
    "InputViews",
    "RoutingEntry",
    "RoutingAudit",
    "StepResult",
    "check_tap_pairs",
    "check_embedding_dims",
    "distillation_step",
    "semi_supervised_step",
    "cross_quality_step",
    "TrainingResult",
    "EmbeddingTrainer",
    "validation_recall_at_1",
    "train_teacher",
    "distill_student",
]
