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

import embedding_distillation.errors as errors
import embedding_distillation.sampling as sampling


def test_enumerate_pairs():
    assert sampling.enumerate_pairs(3) == [(0, 1), (0, 2), (1, 2)]
    assert len(sampling.enumerate_pairs(32)) == 32 * 31 // 2
    with pytest.raises(errors.SamplingError):
        sampling.enumerate_pairs(1)


def test_build_triplet_batch():
    labels = np.repeat(np.arange(4), 2)
    batch = sampling.build_triplet_batch(np.arange(10, 18), np.random.default_rng(0).normal(size=(8, 2)), labels)
    np.testing.assert_array_equal(batch.sample_indices, np.arange(10, 18))
    assert len(batch.triplets) == 8
    assert len(batch.pairs) == 28


def test_validate_rejects_invalid_triplets():
    labels = np.array([0, 0, 1])
    with pytest.raises(errors.SamplingError):
        sampling.TripletBatch(np.arange(3), [(0, 2, 1)], [(0, 1)]).validate(labels)
    with pytest.raises(errors.SamplingError):
        sampling.TripletBatch(np.arange(3), [(0, 1, 2)], [(1, 0)]).validate(labels)
