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
import embedding_distillation.enums as enums
import embedding_distillation.errors as errors


def _gradient(function, value):
    with core.Tape() as tape:
        watched = tape.watch(value)
        output = function(watched)
    return core.backward(tape, output)[watched.node_id].data


def test_broadcasting_gradients_are_reduced():
    bias_gradient = _gradient(lambda bias: (core.Tensor(np.ones((3, 2))) + bias).sum(), np.zeros(2))
    np.testing.assert_array_equal(bias_gradient, [3, 3])


def test_shape_errors():
    with pytest.raises(errors.TensorShapeError):
        core.add(core.Tensor(np.ones((2, 3))), core.Tensor(np.ones((3, 2))))
    with pytest.raises(errors.TensorShapeError):
        core.matmul(core.Tensor(np.ones((2, 3))), core.Tensor(np.ones((2, 3))))
    with pytest.raises(errors.TensorShapeError):
        core.reshape(core.Tensor(np.ones(6)), (4, 2))
    with pytest.raises(errors.TensorShapeError):
        core.take_rows(core.Tensor(np.ones((3, 2))), [0, 3])
    with pytest.raises(errors.TensorShapeError):
        core.broadcast_to(core.Tensor(np.ones(3)), (2, 2))


def test_domain_errors():
    with pytest.raises(errors.TensorDomainError):
        core.divide(core.Tensor([1.0]), core.Tensor([0.0]))
    with pytest.raises(errors.TensorDomainError):
        core.sqrt(core.Tensor([-1.0]))


def test_relu_and_hinge_subgradient_at_zero():
    for primitive in (core.relu, core.hinge):
        gradient = _gradient(lambda value: primitive(value).sum(), np.array([-1.0, 0.0, 2.0]))
        np.testing.assert_array_equal(gradient, [0, 0, 1])


def test_hinge_is_recorded_apart_from_relu():
    with core.Tape() as tape:
        value = tape.watch(np.array([1.0]))
        core.hinge(value)
        core.relu(value)
    assert [node.primitive for node in tape.nodes[1:]] == [enums.Primitive.HINGE, enums.Primitive.RELU]


def test_l2_norm_forward_is_exact_and_gradient_finite_at_zero():
    assert core.l2_norm(core.Tensor([3.0, 4.0]), eps=1e-12).item() == 5.0
    assert core.l2_norm(core.Tensor([0.0, 0.0]), eps=1e-12).item() == 0.0
    gradient = _gradient(lambda value: core.l2_norm(value, eps=1e-12), np.zeros(2))
    assert np.all(np.isfinite(gradient))
    np.testing.assert_array_equal(gradient, [0, 0])


def test_take_rows_scatters_repeated_rows():
    gradient = _gradient(lambda value: core.take_rows(value, [0, 0, 2]).sum(), np.ones((3, 2)))
    np.testing.assert_array_equal(gradient, [[2, 2], [0, 0], [1, 1]])


def test_conv2d_matches_direct_loops():
    rng = np.random.default_rng(0)
    inputs = rng.normal(size=(2, 3, 5, 5))
    weights = rng.normal(size=(4, 3, 3, 3))
    for stride in (1, 2):
        output = core.conv2d(core.Tensor(inputs), core.Tensor(weights), stride=stride).data
        size = -(-5 // stride)
        assert output.shape == (2, 4, size, size)
        padded = np.pad(inputs, ((0, 0), (0, 0), (1, 1), (1, 1)))
        for batch in range(2):
            for out_channel in range(4):
                for row in range(size):
                    for column in range(size):
                        window = padded[batch, :, row * stride:row * stride + 3, column * stride:column * stride + 3]
                        assert output[batch, out_channel, row, column] == pytest.approx(
                            float((window * weights[out_channel]).sum()), abs=1e-12
                        )


def test_conv2d_errors():
    with pytest.raises(errors.TensorShapeError):
        core.conv2d(core.Tensor(np.ones((1, 2, 4, 4))), core.Tensor(np.ones((3, 1, 3, 3))))
    with pytest.raises(errors.TensorShapeError):
        core.conv2d(core.Tensor(np.ones((1, 1, 4, 4))), core.Tensor(np.ones((3, 1, 3, 3))), stride=3)


def test_apply_primitive():
    assert core.apply_primitive(enums.Primitive.ADD, core.Tensor(1.0), core.Tensor(2.0)).item() == 3.0
    with pytest.raises(errors.TensorShapeError):
        core.apply_primitive(enums.Primitive.LEAF, core.Tensor(1.0))
