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
import contextlib
import contextvars
import dataclasses
import typing

import numpy as np

import embedding_distillation.enums as enums
import embedding_distillation.errors as errors
import embedding_distillation.core.tensor as tensor

# stack of active tapes, None entries mask outer tapes (see no_tape)
_ACTIVE_TAPES = contextvars.ContextVar("active_tapes", default=())


@dataclasses.dataclass(frozen=True)
class Node:
    node_id: int
    primitive: enums.Primitive
    input_ids: tuple
    shape: tuple
    # maps the output gradient to one gradient (or None) per input
    vjp: typing.Optional[typing.Callable] = None


class Tape:
    """
    Records primitive applications in execution order, which is a topological order
    of the computation graph: a node can only consume tensors recorded before it.
    """

    def __init__(self):
        self.nodes: list[Node] = []
        self._tokens = []

    def __enter__(self):
        self._tokens.append(_ACTIVE_TAPES.set(_ACTIVE_TAPES.get() + (self,)))
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        _ACTIVE_TAPES.reset(self._tokens.pop())

    def watch(self, value) -> "tensor.Tensor":
        value = value if isinstance(value, tensor.Tensor) else tensor.Tensor(value)
        node = Node(len(self.nodes), enums.Primitive.LEAF, (), value.shape)
        self.nodes.append(node)
        return tensor.Tensor(value.data, node_id=node.node_id, tape=self, copy=False)

    def record(self, primitive, inputs, output_data, vjp) -> "tensor.Tensor":
        input_ids = tuple(self.node_id_of(element) for element in inputs)
        if all(input_id is None for input_id in input_ids):
            # nothing to differentiate through: keep the result a constant
            return tensor.Tensor(output_data, copy=False)
        node = Node(len(self.nodes), primitive, input_ids, tuple(np.shape(output_data)), vjp)
        self.nodes.append(node)
        return tensor.Tensor(output_data, node_id=node.node_id, tape=self, copy=False)

    def node_id_of(self, value) -> typing.Optional[int]:
        if isinstance(value, tensor.Tensor) and value.tape is self:
            return value.node_id
        return None

    def is_recorded(self, value) -> bool:
        return self.node_id_of(value) is not None

    def leaf_ids(self) -> list[int]:
        return [node.node_id for node in self.nodes if node.primitive is enums.Primitive.LEAF]

    def __len__(self):
        return len(self.nodes)


def get_active_tape() -> typing.Optional[Tape]:
    active = _ACTIVE_TAPES.get()
    return active[-1] if active else None


@contextlib.contextmanager
def no_tape():
    token = _ACTIVE_TAPES.set(_ACTIVE_TAPES.get() + (None,))
    try:
        yield
    finally:
        _ACTIVE_TAPES.reset(token)


def backward(tape: Tape, root) -> dict:
    """
    :return: the gradient of root for every leaf watched on tape, keyed by leaf node id.
    Leaves root does not depend on receive a zero gradient.
    """
    root_id = tape.node_id_of(root)
    if root_id is None:
        raise errors.GradientError("backward root is not recorded on this tape")
    if root.size != 1:
        raise errors.GradientError(f"backward root must be a scalar, got shape {root.shape}")
    pending = {root_id: np.ones(root.shape, dtype=np.float64)}
    leaf_gradients = {}
    for node in reversed(tape.nodes[:root_id + 1]):
        gradient = pending.pop(node.node_id, None)
        if node.primitive is enums.Primitive.LEAF:
            if gradient is not None:
                leaf_gradients[node.node_id] = gradient
            continue
        if gradient is None:
            continue
        for input_id, input_gradient in zip(node.input_ids, node.vjp(gradient)):
            if input_id is None or input_gradient is None:
                continue
            if input_id in pending:
                pending[input_id] = pending[input_id] + input_gradient
            else:
                pending[input_id] = input_gradient
    return {
        leaf_id: tensor.Tensor(
            leaf_gradients[leaf_id] if leaf_id in leaf_gradients
            else np.zeros(tape.nodes[leaf_id].shape, dtype=np.float64),
            copy=False
        )
        for leaf_id in tape.leaf_ids()
    }
