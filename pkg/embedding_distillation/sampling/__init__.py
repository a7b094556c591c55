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

from embedding_distillation.sampling import batches
from embedding_distillation.sampling import mining
from embedding_distillation.sampling import pairs
from embedding_distillation.sampling import triplet_batch

from embedding_distillation.sampling.batches import (
    LabeledBatch,
    UnlabeledBatch,
    make_batch,
    sample_unlabeled_batch,
)
from embedding_distillation.sampling.mining import (
    positive_mask,
    negative_mask,
    mine_hard_negatives,
)
from embedding_distillation.sampling.pairs import (
    enumerate_pairs,
)
from embedding_distillation.sampling.triplet_batch import (
    TripletBatch,
    build_triplet_batch,
)

__all__ = [
    "LabeledBatch",
    "UnlabeledBatch",
    "make_batch",
    "sample_unlabeled_batch",
    "positive_mask",
    "negative_mask",
    "mine_hard_negatives",
    "enumerate_pairs",
    "TripletBatch",
    "build_triplet_batch",
]
