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
import math

import numpy as np

import embedding_distillation.errors as errors
import embedding_distillation.core.primitives as primitives


class Tensor:
    """
    Immutable dense float64 array stored in row-major order.
    A tensor watched or produced on a tape carries its node id on that tape.
    """
    __slots__ = ("data", "node_id", "tape")

    def __init__(self, data, node_id=None, tape=None, copy=True):
        array = np.array(data, dtype=np.float64, order="C", copy=True) if copy \
            else np.ascontiguousarray(data, dtype=np.float64)
        array.setflags(write=False)
        self.data = array
        self.node_id = node_id
        self.tape = tape

    @classmethod
    def from_flat(cls, shape, values):
        shape = tuple(int(dim) for dim in shape)
        if any(dim <= 0 for dim in shape):
            raise errors.TensorShapeError(f"shape dimensions must be positive, got {shape}")
        if math.prod(shape) != len(values):
            raise errors.TensorShapeError(
                f"shape {shape} holds {math.prod(shape)} values, got {len(values)}"
            )
        return cls(np.asarray(values, dtype=np.float64).reshape(shape))

    @property
    def shape(self) -> tuple:
        return self.data.shape

    @property
    def ndim(self) -> int:
        return self.data.ndim

    @property
    def size(self) -> int:
        return self.data.size

    @property
    def flat(self) -> np.ndarray:
        return self.data.ravel()

    def numpy(self) -> np.ndarray:
        return self.data.copy()

    def item(self) -> float:
        if self.data.size != 1:
            raise errors.TensorShapeError(f"item() requires a single value tensor, got shape {self.shape}")
        return float(self.data.reshape(-1)[0])

    def detach(self):
        return Tensor(self.data, copy=False)

    def __add__(self, other):
        return primitives.add(self, other)

    def __radd__(self, other):
        return primitives.add(other, self)

    def __sub__(self, other):
        return primitives.subtract(self, other)

    def __rsub__(self, other):
        return primitives.subtract(other, self)

    def __mul__(self, other):
        return primitives.multiply(self, other)

    def __rmul__(self, other):
        return primitives.multiply(other, self)

    def __truediv__(self, other):
        return primitives.divide(self, other)

    def __rtruediv__(self, other):
        return primitives.divide(other, self)

    def __neg__(self):
        return primitives.multiply(self, -1.0)

    def __matmul__(self, other):
        return primitives.matmul(self, other)

    def __abs__(self):
        return primitives.absolute(self)

    def relu(self):
        return primitives.relu(self)

    def square(self):
        return primitives.square(self)

    def sqrt(self):
        return primitives.sqrt(self)

    def sum(self, axis=None, keepdims=False):
        return primitives.reduce_sum(self, axis=axis, keepdims=keepdims)

    def mean(self, axis=None, keepdims=False):
        return primitives.reduce_mean(self, axis=axis, keepdims=keepdims)

    def l2_norm(self, axis=-1, eps=0.0, keepdims=False):
        return primitives.l2_norm(self, axis=axis, eps=eps, keepdims=keepdims)

    def reshape(self, shape):
        return primitives.reshape(self, shape)

    def take_rows(self, indices):
        return primitives.take_rows(self, indices)

    def __repr__(self):
        return f"Tensor(shape={self.shape}, node_id={self.node_id})"
