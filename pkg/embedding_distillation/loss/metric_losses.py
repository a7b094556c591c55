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


def as_tensor(value) -> core.Tensor:
    return value if isinstance(value, core.Tensor) else core.Tensor(value)


def row_distances(left, right, squared=False) -> core.Tensor:
    """
    Euclidean distance along the last axis. The forward value is exact,
    the epsilon only keeps the gradient finite when both sides coincide.
    """
    difference = left - right
    if squared:
        return difference.square().sum(axis=-1)
    return difference.l2_norm(axis=-1, eps=constants.DISTANCE_EPSILON)


def triplet_loss(anchor, positive, negative, margin=constants.DEFAULT_MARGIN, squared=False) -> core.Tensor:
    """
    max(0, d(a, p) - d(a, n) + margin), averaged when given rows of triplets
    """
    anchor, positive, negative = as_tensor(anchor), as_tensor(positive), as_tensor(negative)
    if not (anchor.shape == positive.shape == negative.shape):
        raise errors.LossInputError(
            f"triplet_loss: anchor, positive and negative shapes differ: "
            f"{anchor.shape}, {positive.shape}, {negative.shape}"
        )
    positive_distance = row_distances(anchor, positive, squared)
    negative_distance = row_distances(anchor, negative, squared)
    return core.hinge(positive_distance - negative_distance + margin).mean()


def batch_triplet_loss(embeddings, triplets, margin=constants.DEFAULT_MARGIN, squared=False) -> core.Tensor:
    """
    :param triplets: sequence of (anchor, positive, negative) row indices into embeddings
    :return: the mean triplet loss over triplets
    """
    embeddings = as_tensor(embeddings)
    if len(triplets) == 0:
        raise errors.LossInputError("batch_triplet_loss: no triplet to average over")
    indices = np.asarray(triplets, dtype=np.int64)
    return triplet_loss(
        embeddings.take_rows(indices[:, 0]),
        embeddings.take_rows(indices[:, 1]),
        embeddings.take_rows(indices[:, 2]),
        margin,
        squared,
    )
