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
import embedding_distillation.evaluation.report as report


def _as_array(embeddings) -> np.ndarray:
    return embeddings.data if isinstance(embeddings, core.Tensor) else np.asarray(embeddings, dtype=np.float64)


def pairwise_distances(embeddings) -> np.ndarray:
    """
    Euclidean (N, N) distances computed one row at a time from direct differences,
    which makes the matrix exactly symmetric with an exactly zero diagonal
    """
    embeddings = _as_array(embeddings)
    if embeddings.ndim != 2 or embeddings.shape[0] < 2:
        raise errors.RetrievalError(f"pairwise_distances: expected at least 2 embedding rows, got {embeddings.shape}")
    distances = np.empty((embeddings.shape[0], embeddings.shape[0]), dtype=np.float64)
    for row, embedding in enumerate(embeddings):
        distances[row] = np.sqrt(np.square(embeddings - embedding).sum(axis=-1))
    return distances


def recall_at_k(embeddings, labels, k_values=constants.DEFAULT_K_VALUES) -> report.RetrievalReport:
    """
    Every sample queries all the others. A query counts as a hit for K when one of its K nearest
    neighbors shares its label. Distance ties go to the lower index.
    """
    embeddings = _as_array(embeddings)
    labels = np.asarray(labels)
    if embeddings.ndim != 2 or len(labels) != embeddings.shape[0]:
        raise errors.RetrievalError(f"recall_at_k: {len(labels)} labels for embeddings of shape {embeddings.shape}")
    classes, counts = np.unique(labels, return_counts=True)
    if np.any(counts < 2):
        raise errors.RetrievalError(f"recall_at_k: class {classes[np.argmax(counts < 2)]} has a single sample")
    k_values = sorted(set(int(k) for k in k_values))
    if not k_values or k_values[0] < 1 or k_values[-1] > len(labels) - 1:
        raise errors.RetrievalError(f"recall_at_k: K values {k_values} must be in [1, {len(labels) - 1}]")
    distances = pairwise_distances(embeddings)
    np.fill_diagonal(distances, np.inf)
    neighbors = np.argsort(distances, axis=1, kind="stable")[:, :k_values[-1]]
    hits = labels[neighbors] == labels[:, None]
    first_hit_found = np.logical_or.accumulate(hits, axis=1)
    return report.RetrievalReport(
        {k: float(first_hit_found[:, k - 1].mean()) for k in k_values},
        len(labels),
    )
