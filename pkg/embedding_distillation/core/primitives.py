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

import embedding_distillation.constants as constants
import embedding_distillation.enums as enums
import embedding_distillation.errors as errors
import embedding_distillation.core.tape as tape_module
import embedding_distillation.core.tensor as tensor


def apply_primitive(primitive: enums.Primitive, *inputs, **params):
    if primitive not in _PRIMITIVES:
        raise errors.TensorShapeError(f"unknown primitive: {primitive}")
    return _PRIMITIVES[primitive](*inputs, **params)


def _as_tensor(value):
    return value if isinstance(value, tensor.Tensor) else tensor.Tensor(value)


def _record(primitive, inputs, output_data, vjp):
    active_tape = tape_module.get_active_tape()
    if active_tape is None:
        return tensor.Tensor(output_data, copy=False)
    return active_tape.record(primitive, inputs, output_data, vjp)


def _broadcast_shape(primitive, left, right):
    try:
        return np.broadcast_shapes(left.shape, right.shape)
    except ValueError:
        raise errors.TensorShapeError(
            f"{primitive.value}: incompatible shapes {left.shape} and {right.shape}"
        ) from None


def _unbroadcast(gradient, shape):
    # sum the gradient over the axes broadcasting added or stretched
    extra_axes = gradient.ndim - len(shape)
    if extra_axes > 0:
        gradient = gradient.sum(axis=tuple(range(extra_axes)))
    stretched = tuple(axis for axis, dim in enumerate(shape) if dim == 1 and gradient.shape[axis] != 1)
    if stretched:
        gradient = gradient.sum(axis=stretched, keepdims=True)
    return gradient.reshape(shape)


def _normalize_axes(axis, ndim):
    if axis is None:
        return tuple(range(ndim))
    axes = (axis,) if isinstance(axis, int) else tuple(axis)
    return tuple(sorted(ax % ndim for ax in axes)) if ndim else ()


def _expand_reduced(gradient, axes, keepdims, shape):
    if not keepdims:
        for ax in axes:
            gradient = np.expand_dims(gradient, ax)
    return np.broadcast_to(gradient, shape)


def add(left, right):
    left, right = _as_tensor(left), _as_tensor(right)
    _broadcast_shape(enums.Primitive.ADD, left, right)

    def vjp(gradient):
        return _unbroadcast(gradient, left.shape), _unbroadcast(gradient, right.shape)
    return _record(enums.Primitive.ADD, (left, right), left.data + right.data, vjp)


def subtract(left, right):
    left, right = _as_tensor(left), _as_tensor(right)
    _broadcast_shape(enums.Primitive.SUBTRACT, left, right)

    def vjp(gradient):
        return _unbroadcast(gradient, left.shape), _unbroadcast(-gradient, right.shape)
    return _record(enums.Primitive.SUBTRACT, (left, right), left.data - right.data, vjp)


def multiply(left, right):
    left, right = _as_tensor(left), _as_tensor(right)
    _broadcast_shape(enums.Primitive.MULTIPLY, left, right)

    def vjp(gradient):
        return _unbroadcast(gradient * right.data, left.shape), _unbroadcast(gradient * left.data, right.shape)
    return _record(enums.Primitive.MULTIPLY, (left, right), left.data * right.data, vjp)


def divide(left, right):
    left, right = _as_tensor(left), _as_tensor(right)
    _broadcast_shape(enums.Primitive.DIVIDE, left, right)
    if np.any(right.data == 0):
        raise errors.TensorDomainError(f"{enums.Primitive.DIVIDE.value}: division by zero")
    output = left.data / right.data

    def vjp(gradient):
        return (
            _unbroadcast(gradient / right.data, left.shape),
            _unbroadcast(-gradient * output / right.data, right.shape),
        )
    return _record(enums.Primitive.DIVIDE, (left, right), output, vjp)


def matmul(left, right):
    left, right = _as_tensor(left), _as_tensor(right)
    if left.ndim != 2 or right.ndim != 2 or left.shape[1] != right.shape[0]:
        raise errors.TensorShapeError(
            f"{enums.Primitive.MATMUL.value}: incompatible shapes {left.shape} and {right.shape}"
        )

    def vjp(gradient):
        return gradient @ right.data.T, left.data.T @ gradient
    return _record(enums.Primitive.MATMUL, (left, right), left.data @ right.data, vjp)


def _positive_part(primitive, value):
    value = _as_tensor(value)
    active = value.data > 0

    def vjp(gradient):
        # subgradient at exactly 0 is 0
        return gradient * active,
    return _record(primitive, (value,), np.where(active, value.data, 0.0), vjp)


def relu(value):
    return _positive_part(enums.Primitive.RELU, value)


def hinge(value):
    """
    max(0, value), recorded separately from relu so that loss hinges are told apart
    from network activations on the tape
    """
    return _positive_part(enums.Primitive.HINGE, value)


def square(value):
    value = _as_tensor(value)

    def vjp(gradient):
        return 2.0 * value.data * gradient,
    return _record(enums.Primitive.SQUARE, (value,), np.square(value.data), vjp)


def sqrt(value):
    value = _as_tensor(value)
    if np.any(value.data < 0):
        raise errors.TensorDomainError(f"{enums.Primitive.SQRT.value} of a negative value")
    output = np.sqrt(value.data)

    def vjp(gradient):
        safe_output = np.where(output > 0, output, 1.0)
        return np.where(output > 0, gradient * 0.5 / safe_output, 0.0),
    return _record(enums.Primitive.SQRT, (value,), output, vjp)


def absolute(value):
    value = _as_tensor(value)

    def vjp(gradient):
        return gradient * np.sign(value.data),
    return _record(enums.Primitive.ABSOLUTE, (value,), np.abs(value.data), vjp)


def reduce_sum(value, axis=None, keepdims=False):
    value = _as_tensor(value)
    axes = _normalize_axes(axis, value.ndim)

    def vjp(gradient):
        return _expand_reduced(gradient, axes, keepdims, value.shape),
    return _record(enums.Primitive.SUM, (value,), np.sum(value.data, axis=axes, keepdims=keepdims), vjp)


def reduce_mean(value, axis=None, keepdims=False):
    value = _as_tensor(value)
    axes = _normalize_axes(axis, value.ndim)
    count = int(np.prod([value.shape[ax] for ax in axes])) if axes else 1
    if count == 0:
        raise errors.TensorShapeError(f"{enums.Primitive.MEAN.value} over an empty axis of shape {value.shape}")

    def vjp(gradient):
        return _expand_reduced(gradient / count, axes, keepdims, value.shape),
    return _record(enums.Primitive.MEAN, (value,), np.mean(value.data, axis=axes, keepdims=keepdims), vjp)


def l2_norm(value, axis=-1, eps=0.0, keepdims=False):
    """
    Exact Euclidean norm over axis. eps only enters the gradient denominator
    sqrt(sum(x^2) + eps), keeping the gradient finite where the norm is 0.
    """
    value = _as_tensor(value)
    axes = _normalize_axes(axis, value.ndim)
    squared_sum = np.sum(np.square(value.data), axis=axes, keepdims=True)
    output = np.sqrt(squared_sum)
    denominator = np.sqrt(squared_sum + eps)

    def vjp(gradient):
        expanded = _expand_reduced(gradient, axes, keepdims, value.shape)
        safe_denominator = np.where(denominator > 0, denominator, 1.0)
        return np.where(denominator > 0, expanded * value.data / safe_denominator, 0.0),
    return _record(
        enums.Primitive.L2_NORM, (value,), output if keepdims else np.squeeze(output, axis=axes), vjp
    )


def broadcast_to(value, shape):
    value = _as_tensor(value)
    shape = tuple(shape)
    try:
        output = np.broadcast_to(value.data, shape)
    except ValueError:
        raise errors.TensorShapeError(
            f"{enums.Primitive.BROADCAST.value}: can't broadcast shape {value.shape} to {shape}"
        ) from None

    def vjp(gradient):
        return _unbroadcast(gradient, value.shape),
    return _record(enums.Primitive.BROADCAST, (value,), output, vjp)


def reshape(value, shape):
    value = _as_tensor(value)
    try:
        output = value.data.reshape(shape)
    except ValueError:
        raise errors.TensorShapeError(
            f"{enums.Primitive.RESHAPE.value}: can't reshape {value.shape} into {tuple(shape)}"
        ) from None

    def vjp(gradient):
        return gradient.reshape(value.shape),
    return _record(enums.Primitive.RESHAPE, (value,), output, vjp)


def take_rows(value, indices):
    value = _as_tensor(value)
    indices = np.asarray(indices, dtype=np.int64)
    if value.ndim == 0 or indices.ndim != 1:
        raise errors.TensorShapeError(
            f"{enums.Primitive.TAKE_ROWS.value}: expected 1-D indices into a non-scalar tensor, "
            f"got indices of shape {indices.shape} and tensor of shape {value.shape}"
        )
    if indices.size and (indices.min() < 0 or indices.max() >= value.shape[0]):
        raise errors.TensorShapeError(
            f"{enums.Primitive.TAKE_ROWS.value}: row index out of range for {value.shape[0]} rows"
        )

    def vjp(gradient):
        rows_gradient = np.zeros(value.shape, dtype=np.float64)
        np.add.at(rows_gradient, indices, gradient)
        return rows_gradient,
    return _record(enums.Primitive.TAKE_ROWS, (value,), value.data[indices], vjp)


def conv2d(inputs, weights, stride=1):
    """
    3x3 convolution with zero padding 1 over channels-first batches:
    inputs (B, C, H, W), weights (O, C, 3, 3) -> (B, O, ceil(H / stride), ceil(W / stride))
    """
    inputs, weights = _as_tensor(inputs), _as_tensor(weights)
    kernel = constants.CONV_KERNEL_SIZE
    padding = constants.CONV_PADDING
    if inputs.ndim != 4 or weights.ndim != 4 or weights.shape[1] != inputs.shape[1] \
            or weights.shape[2:] != (kernel, kernel):
        raise errors.TensorShapeError(
            f"{enums.Primitive.CONV2D.value}: incompatible shapes {inputs.shape} and {weights.shape}"
        )
    if stride not in constants.ALLOWED_CONV_STRIDES:
        raise errors.TensorShapeError(f"{enums.Primitive.CONV2D.value}: unsupported stride {stride}")
    padded = np.pad(inputs.data, ((0, 0), (0, 0), (padding, padding), (padding, padding)))
    windows = np.lib.stride_tricks.sliding_window_view(padded, (kernel, kernel), axis=(2, 3))
    windows = windows[:, :, ::stride, ::stride]
    output = np.einsum("bchwij,ocij->bohw", windows, weights.data)

    def vjp(gradient):
        weights_gradient = np.einsum("bchwij,bohw->ocij", windows, gradient)
        windows_gradient = np.einsum("bohw,ocij->bchwij", gradient, weights.data)
        padded_gradient = np.zeros(padded.shape, dtype=np.float64)
        out_height, out_width = gradient.shape[2:]
        for row in range(kernel):
            for column in range(kernel):
                padded_gradient[
                    :, :,
                    row:row + stride * out_height:stride,
                    column:column + stride * out_width:stride
                ] += windows_gradient[..., row, column]
        return padded_gradient[:, :, padding:-padding, padding:-padding], weights_gradient
    return _record(enums.Primitive.CONV2D, (inputs, weights), output, vjp)


_PRIMITIVES = {
    enums.Primitive.ADD: add,
    enums.Primitive.SUBTRACT: subtract,
    enums.Primitive.MULTIPLY: multiply,
    enums.Primitive.DIVIDE: divide,
    enums.Primitive.MATMUL: matmul,
    enums.Primitive.RELU: relu,
    enums.Primitive.HINGE: hinge,
    enums.Primitive.SQUARE: square,
    enums.Primitive.SQRT: sqrt,
    enums.Primitive.ABSOLUTE: absolute,
    enums.Primitive.SUM: reduce_sum,
    enums.Primitive.MEAN: reduce_mean,
    enums.Primitive.L2_NORM: l2_norm,
    enums.Primitive.BROADCAST: broadcast_to,
    enums.Primitive.RESHAPE: reshape,
    enums.Primitive.TAKE_ROWS: take_rows,
    enums.Primitive.CONV2D: conv2d,
}
