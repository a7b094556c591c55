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

import embedding_distillation.errors as errors
import embedding_distillation.core as core


def positive_mask(labels) -> np.ndarray:
    labels = np.asarray(labels)
    return (labels[:, None] == labels[None, :]) & ~np.eye(len(labels), dtype=bool)


def negative_mask(labels) -> np.ndarray:
    labels = np.asarray(labels)
    return labels[:, None] != labels[None, :]


def mine_hard_negatives(embeddings, labels) -> list:
    """
    One triplet per ordered (anchor, positive) same label pair of the batch, its negative being the
    differently labeled sample closest to the anchor. np.argmin keeps the lowest index on ties.
    :return: list of (anchor, positive, negative) batch indices
    """
    embeddings = embeddings.data if isinstance(embeddings, core.Tensor) else np.asarray(embeddings, np.float64)
    labels = np.asarray(labels)
    if embeddings.ndim != 2 or embeddings.shape[0] != len(labels):
        raise errors.SamplingError(
            f"mine_hard_negatives: {len(labels)} labels for embeddings of shape {embeddings.shape}"
        )
    if len(np.unique(labels)) < 2:
        raise errors.SamplingError("mine_hard_negatives: a batch needs at least 2 classes to provide negatives")
    positives = positive_mask(labels)
    negatives = negative_mask(labels)
    triplets = []
    for anchor in range(len(labels)):
        distances = np.sqrt(np.square(embeddings - embeddings[anchor]).sum(axis=-1))
        negative = int(np.argmin(np.where(negatives[anchor], distances, np.inf)))
        triplets.extend(
            (anchor, int(positive), negative) for positive in np.flatnonzero(positives[anchor])
        )
    return triplets
