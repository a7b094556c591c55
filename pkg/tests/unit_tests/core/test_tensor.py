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
import numpy as np
import pytest

import embedding_distillation.core as core
import embedding_distillation.errors as errors


def test_from_flat_row_major():
    tensor = core.Tensor.from_flat((2, 3), [1, 2, 3, 4, 5, 6])
    assert tensor.shape == (2, 3)
    assert tensor.data[1, 0] == 4
    assert list(tensor.flat) == [1, 2, 3, 4, 5, 6]


def test_from_flat_errors():
    with pytest.raises(errors.TensorShapeError):
        core.Tensor.from_flat((2, 3), [1, 2, 3])
    with pytest.raises(errors.TensorShapeError):
        core.Tensor.from_flat((0, 3), [])


def test_tensor_is_immutable():
    source = np.ones((2, 2))
    tensor = core.Tensor(source)
    source[0, 0] = 5
    assert tensor.data[0, 0] == 1
    with pytest.raises(ValueError):
        tensor.data[0, 0] = 2
    copy = tensor.numpy()
    copy[0, 0] = 3
    assert tensor.data[0, 0] == 1


def test_item():
    assert core.Tensor(2.5).item() == 2.5
    with pytest.raises(errors.TensorShapeError):
        core.Tensor([1.0, 2.0]).item()


def test_operators():
    left = core.Tensor([[1.0, 2.0], [3.0, 4.0]])
    right = core.Tensor([[2.0, 0.5], [1.0, -1.0]])
    np.testing.assert_array_equal((left + right).data, [[3, 2.5], [4, 3]])
    np.testing.assert_array_equal((left - right).data, [[-1, 1.5], [2, 5]])
    np.testing.assert_array_equal((left * 2).data, [[2, 4], [6, 8]])
    np.testing.assert_array_equal((1 - left).data, [[0, -1], [-2, -3]])
    np.testing.assert_array_equal((-left).data, [[-1, -2], [-3, -4]])
    np.testing.assert_array_equal((left @ right).data, [[4, -1.5], [10, -2.5]])
    np.testing.assert_array_equal(abs(right).data, [[2, 0.5], [1, 1]])
    assert left.sum().item() == 10
    assert left.mean(axis=0).shape == (2, )


def test_detach_leaves_the_tape():
    with core.Tape() as tape:
        watched = tape.watch(np.ones(3))
        detached = watched.detach()
    assert tape.is_recorded(watched)
    assert not tape.is_recorded(detached)
