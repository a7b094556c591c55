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

from embedding_distillation.loss import metric_losses
from embedding_distillation.loss import distillation_losses
from embedding_distillation.loss import attention
from embedding_distillation.loss import objective
from embedding_distillation.loss import relative_embedding

from embedding_distillation.loss.metric_losses import (
    row_distances,
    triplet_loss,
    batch_triplet_loss,
)
from embedding_distillation.loss.distillation_losses import (
    kd_abs_loss,
    kd_rel_loss,
    relative_distance_loss,
    hint_loss,
)
from embedding_distillation.loss.attention import (
    attention_map,
    tap_attention_maps,
    attention_loss,
    batch_attention_loss,
)
from embedding_distillation.loss.objective import (
    LossWeights,
    BatchContext,
    LossTerms,
    total_loss,
)
from embedding_distillation.loss.relative_embedding import (
    RelativeEmbeddingFit,
    distance_matrix,
    fit_relative_embedding,
)

__all__ = [
    "row_distances",
    "triplet_loss",
    "batch_triplet_loss",
    "kd_abs_loss",
    "kd_rel_loss",
    "relative_distance_loss",
    "hint_loss",
    "attention_map",
    "tap_attention_maps",
    "attention_loss",
    "batch_attention_loss",
    "LossWeights",
    "BatchContext",
    "LossTerms",
    "total_loss",
    "RelativeEmbeddingFit",
    "distance_matrix",
    "fit_relative_embedding",
]
