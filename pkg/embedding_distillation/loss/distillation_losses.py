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


def kd_abs_loss(student_embeddings, teacher_embeddings, squared=False) -> core.Tensor:
    """
    Absolute teacher: mean over samples of ||F_s(x) - F_t(x)||
    """
    student_embeddings = metric_losses.as_tensor(student_embeddings)
    teacher_embeddings = metric_losses.as_tensor(teacher_embeddings)
    if student_embeddings.shape != teacher_embeddings.shape:
        raise errors.LossInputError(
            f"kd_abs_loss: student shape {student_embeddings.shape} differs from "
            f"teacher shape {teacher_embeddings.shape}"
        )
    return metric_losses.row_distances(student_embeddings, teacher_embeddings, squared).mean()


def check_pairs(pairs, batch_size) -> np.ndarray:
    indices = np.asarray(pairs, dtype=np.int64)
    if indices.size == 0:
        raise errors.LossInputError("relative loss: empty pair set")
    if indices.ndim != 2 or indices.shape[1] != 2:
        raise errors.LossInputError(f"relative loss: pairs must be (i, j) tuples, got shape {indices.shape}")
    out_of_range = np.flatnonzero((indices < 0).any(axis=1) | (indices >= batch_size).any(axis=1))
    if out_of_range.size:
        raise errors.LossInputError(
            f"relative loss: pair {tuple(indices[out_of_range[0]])} is out of range for a batch of {batch_size}"
        )
    identical = np.flatnonzero(indices[:, 0] == indices[:, 1])
    if identical.size:
        raise errors.LossInputError(f"relative loss: pair {tuple(indices[identical[0]])} joins a sample to itself")
    return indices


def pair_distances(embeddings, pair_indices, squared=False) -> core.Tensor:
    return metric_losses.row_distances(
        embeddings.take_rows(pair_indices[:, 0]), embeddings.take_rows(pair_indices[:, 1]), squared
    )


def relative_distance_loss(student_embeddings, target_distances, pair_indices, squared=False) -> core.Tensor:
    """
    mean over pairs of |d_s(i, j) - target(i, j)|
    """
    student_distances = pair_distances(metric_losses.as_tensor(student_embeddings), pair_indices, squared)
    return abs(student_distances - target_distances).mean()


def kd_rel_loss(student_embeddings, teacher_embeddings, pairs, squared=False) -> core.Tensor:
    """
    Relative teacher: mean over pairs of |d_s(i, j) - d_t(i, j)|.
    Student and teacher embedding sizes may differ, only distances are compared.
    """
    student_embeddings = metric_losses.as_tensor(student_embeddings)
    teacher_embeddings = metric_losses.as_tensor(teacher_embeddings)
    if student_embeddings.ndim != 2 or teacher_embeddings.ndim != 2 \
            or student_embeddings.shape[0] != teacher_embeddings.shape[0]:
        raise errors.LossInputError(
            f"kd_rel_loss: student shape {student_embeddings.shape} and teacher shape "
            f"{teacher_embeddings.shape} must be matrices with the same sample count"
        )
    pair_indices = check_pairs(pairs, student_embeddings.shape[0])
    teacher_distances = pair_distances(teacher_embeddings, pair_indices, squared)
    return relative_distance_loss(student_embeddings, teacher_distances, pair_indices, squared)


def hint_loss(tap_pairs) -> core.Tensor:
    """
    :param tap_pairs: sequence of (student TapOutput, teacher TapOutput) with identical activation shapes
    :return: mean over pairs of the mean over samples of the distance between flattened activations
    """
    if not tap_pairs:
        raise errors.LossInputError("hint_loss: no tap pair")
    pair_losses = []
    for student_tap, teacher_tap in tap_pairs:
        student_activation = metric_losses.as_tensor(student_tap.activation)
        teacher_activation = metric_losses.as_tensor(teacher_tap.activation)
        if student_activation.shape != teacher_activation.shape:
            raise errors.LossInputError(
                f"hint_loss: pair ({teacher_tap.name}, {student_tap.name}) has teacher shape "
                f"{teacher_activation.shape} and student shape {student_activation.shape}"
            )
        sample_count = student_activation.shape[0]
        difference = (student_activation - teacher_activation).reshape((sample_count, -1))
        pair_losses.append(difference.l2_norm(axis=-1, eps=constants.DISTANCE_EPSILON).mean())
    total = pair_losses[0]
    for pair_loss in pair_losses[1:]:
        total = total + pair_loss
    return total / len(pair_losses)
