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
import dataclasses

import numpy as np

import embedding_distillation.errors as errors
import embedding_distillation.sampling.mining as mining
import embedding_distillation.sampling.pairs as pairs_module


@dataclasses.dataclass(frozen=True)
class TripletBatch:
    sample_indices: np.ndarray
    # (anchor, positive, negative) positions in the batch
    triplets: list
    # (i, j) positions in the batch, i < j
    pairs: list

    def validate(self, labels):
        labels = np.asarray(labels)
        size = len(self.sample_indices)
        for anchor, positive, negative in self.triplets:
            if anchor == positive or labels[anchor] != labels[positive] or labels[anchor] == labels[negative]:
                raise errors.SamplingError(f"invalid triplet {(anchor, positive, negative)}")
        for first, second in self.pairs:
            if not 0 <= first < second < size:
                raise errors.SamplingError(f"invalid pair {(first, second)} for a batch of {size}")


def build_triplet_batch(sample_indices, embeddings, labels) -> TripletBatch:
    """
    :param embeddings: batch embeddings of the forward pass that also feeds the loss
    :param labels: batch labels, aligned with sample_indices
    """
    batch = TripletBatch(
        np.asarray(sample_indices),
        mining.mine_hard_negatives(embeddings, labels),
        pairs_module.enumerate_pairs(len(sample_indices)),
    )
    batch.validate(labels)
    return batch
