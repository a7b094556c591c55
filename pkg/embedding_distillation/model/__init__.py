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

from embedding_distillation.model import net_config
from embedding_distillation.model import embedding_net
from embedding_distillation.model import checkpoint
from embedding_distillation.model import presets

from embedding_distillation.model.net_config import (
    LayerSpec,
    NetConfig,
    weight_name,
    bias_name,
)
from embedding_distillation.model.embedding_net import (
    TapOutput,
    EmbeddingNet,
    init_params,
    embed,
    embed_array,
    count_parameters,
)
from embedding_distillation.model.checkpoint import (
    checkpoint_bytes,
    checkpoint_from_bytes,
    save_checkpoint,
    load_checkpoint,
    params_digest,
)
from embedding_distillation.model.presets import (
    vector_net_config,
    default_teacher_config,
    default_student_config,
    grid_net_config,
    grid_teacher_config,
    grid_student_config,
)

__all__ = [
    "LayerSpec",
    "NetConfig",
    "weight_name",
    "bias_name",
    "TapOutput",
    "EmbeddingNet",
    "init_params",
    "embed",
    "embed_array",
    "count_parameters",
    "checkpoint_bytes",
    "checkpoint_from_bytes",
    "save_checkpoint",
    "load_checkpoint",
    "params_digest",
    "vector_net_config",
    "default_teacher_config",
    "default_student_config",
    "grid_net_config",
    "grid_teacher_config",
    "grid_student_config",
]
