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
import embedding_distillation.loss as loss
import tests.test_utils.oracles as oracles

INSTANCES = 1000


def test_triplet_loss_matches_scalar_recomputation():
    rng = np.random.default_rng(0)
    for _ in range(INSTANCES):
        rows, dim = rng.integers(1, 5), rng.integers(1, 6)
        anchors, positives, negatives = (rng.normal(size=(rows, dim)) for _ in range(3))
        margin = rng.uniform(0, 2)
        value = loss.triplet_loss(anchors, positives, negatives, margin).item()
        assert abs(value - oracles.triplet_loss(anchors, positives, negatives, margin)) <= 1e-9


def test_triplet_loss_examples():
    assert loss.triplet_loss([[0.0, 0.0]], [[1.0, 0.0]], [[3.0, 0.0]], 0.2).item() == 0.0
    assert loss.triplet_loss([[0.0, 0.0]], [[2.0, 0.0]], [[1.0, 0.0]], 0.2).item() == pytest.approx(1.2)
    # coinciding points: only the margin remains
    assert loss.triplet_loss([[1.0, 1.0]], [[1.0, 1.0]], [[1.0, 1.0]], 0.2).item() == pytest.approx(0.2)


def test_squared_distances():
    value = loss.triplet_loss([[0.0, 0.0]], [[2.0, 0.0]], [[1.0, 0.0]], 0.0, squared=True).item()
    assert value == pytest.approx(3.0)


def test_batch_triplet_loss():
    embeddings = np.array([[0.0], [1.0], [4.0], [0.5]])
    value = loss.batch_triplet_loss(embeddings, [(0, 1, 2), (0, 1, 3)], margin=0.0).item()
    assert value == pytest.approx((0.0 + 0.5) / 2)
    with pytest.raises(errors.LossInputError):
        loss.batch_triplet_loss(embeddings, [])


def test_shape_mismatch():
    with pytest.raises(errors.LossInputError):
        loss.triplet_loss(np.ones((2, 3)), np.ones((2, 3)), np.ones((2, 2)))
