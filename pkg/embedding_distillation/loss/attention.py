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
import embedding_distillation.errors as errors
import embedding_distillation.core as core
import embedding_distillation.loss.metric_losses as metric_losses


def attention_map(feature_map) -> core.Tensor:
    """
    Sum over channels of squared activations: (C, H, W) -> (H, W), or (B, C, H, W) -> (B, H, W)
    """
    feature_map = metric_losses.as_tensor(feature_map)
    if feature_map.ndim not in (3, 4) or feature_map.shape[-3] < 1:
        raise errors.TensorShapeError(
            f"attention_map: expected a (C, H, W) or (B, C, H, W) feature map, got shape {feature_map.shape}"
        )
    return feature_map.square().sum(axis=-3)


def tap_attention_maps(activation) -> core.Tensor:
    """
    Batched attention maps of a tap activation, a (B, D) activation is one channel over a 1 x D map
    """
    activation = metric_losses.as_tensor(activation)
    if activation.ndim == 2:
        activation = activation.reshape((activation.shape[0], 1, 1, activation.shape[1]))
    return attention_map(activation)


def attention_loss(student_map, teacher_map, allow_zero_maps=False) -> core.Tensor:
    """
    Distance between maps each divided by its own L2 norm, in [0, 2].
    Accepts single (H, W) maps or (B, H, W) batches, batches are averaged.
    The norm is sqrt(|map|^2 + eps): with allow_zero_maps, an all zero map normalizes to zero
    instead of raising AttentionMapError.
    """
    student_map = metric_losses.as_tensor(student_map)
    teacher_map = metric_losses.as_tensor(teacher_map)
    if student_map.shape != teacher_map.shape or student_map.ndim not in (2, 3):
        raise errors.LossInputError(
            f"attention_loss: student map shape {student_map.shape} and teacher map shape "
            f"{teacher_map.shape} must be identical (H, W) or (B, H, W) shapes"
        )
    sample_count = student_map.shape[0] if student_map.ndim == 3 else 1
    normalized_maps = []
    for side, attention in (("student", student_map), ("teacher", teacher_map)):
        flat_map = attention.reshape((sample_count, -1))
        squared_norms = flat_map.square().sum(axis=-1, keepdims=True)
        if not allow_zero_maps and np.any(squared_norms.data == 0):
            raise errors.AttentionMapError(f"attention_loss: {side} attention map has a zero norm")
        normalized_maps.append(flat_map / (squared_norms + constants.DISTANCE_EPSILON).sqrt())
    return metric_losses.row_distances(*normalized_maps).mean()


def batch_attention_loss(tap_pairs) -> core.Tensor:
    """
    :param tap_pairs: sequence of (student TapOutput, teacher TapOutput) with identical spatial shapes
    :return: mean over pairs of the batch averaged attention loss
    """
    if not tap_pairs:
        raise errors.LossInputError("attention loss: no tap pair")
    pair_losses = []
    for student_tap, teacher_tap in tap_pairs:
        student_maps = tap_attention_maps(student_tap.activation)
        teacher_maps = tap_attention_maps(teacher_tap.activation)
        if student_maps.shape != teacher_maps.shape:
            raise errors.LossInputError(
                f"attention loss: pair ({teacher_tap.name}, {student_tap.name}) has teacher map shape "
                f"{teacher_maps.shape} and student map shape {student_maps.shape}"
            )
        # dead samples (all zero activations) normalize to a zero map
        pair_losses.append(attention_loss(student_maps, teacher_maps, allow_zero_maps=True))
    total = pair_losses[0]
    for pair_loss in pair_losses[1:]:
        total = total + pair_loss
    return total / len(pair_losses)
