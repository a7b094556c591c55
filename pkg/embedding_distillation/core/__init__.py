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

from embedding_distillation.core import tensor
from embedding_distillation.core import primitives
from embedding_distillation.core import tape
from embedding_distillation.core import gradient_check

from embedding_distillation.core.tensor import (
    Tensor,
)
from embedding_distillation.core.tape import (
    Node,
    Tape,
    get_active_tape,
    no_tape,
    backward,
)
from embedding_distillation.core.primitives import (
    apply_primitive,
    add,
    subtract,
    multiply,
    divide,
    matmul,
    relu,
    hinge,
    square,
    sqrt,
    absolute,
    reduce_sum,
    reduce_mean,
    l2_norm,
    broadcast_to,
    reshape,
    take_rows,
    conv2d,
)
from embedding_distillation.core.gradient_check import (
    GradientCheckResult,
    grad_check,
    nudge_from_kinks,
)

__all__ = [
    "Tensor",
    "Node",
    "Tape",
    "get_active_tape",
    "no_tape",
    "backward",
    "apply_primitive",
    "add",
    "subtract",
    "multiply",
    "divide",
    "matmul",
    "relu",
    "hinge",
    "square",
    "sqrt",
    "absolute",
    "reduce_sum",
    "reduce_mean",
    "l2_norm",
    "broadcast_to",
    "reshape",
    "take_rows",
    "conv2d",
    "GradientCheckResult",
    "grad_check",
    "nudge_from_kinks",
]
