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

import embedding_distillation.enums as enums
import embedding_distillation.errors as errors
import embedding_distillation.data as data


def test_low_resolution_block_averages():
    sample = np.arange(16, dtype=float).reshape(1, 4, 4)
    degraded = data.degrade(sample, data.DegradationSpec(enums.DegradationKind.LOW_RESOLUTION, factor=2))
    assert degraded.shape == sample.shape
    np.testing.assert_array_equal(degraded[0, :2, :2], np.full((2, 2), 2.5))
    np.testing.assert_array_equal(degraded[0, 2:, 2:], np.full((2, 2), 12.5))


@pytest.mark.parametrize("factor", [2, 3, 6])
def test_low_resolution_twice_is_low_resolution_once(factor):
    dataset = data.gen_synthetic_grids(3, 2, 6, 6, 2)
    spec = data.DegradationSpec(enums.DegradationKind.LOW_RESOLUTION, factor=factor)
    for sample in dataset.inputs:
        once = data.degrade(sample, spec)
        np.testing.assert_allclose(data.degrade(once, spec), once, rtol=1e-12, atol=1e-12)


def test_noise_is_seeded():
    sample = np.zeros((3, 4))
    spec = data.DegradationSpec(enums.DegradationKind.NOISE, sigma=0.5)
    np.testing.assert_array_equal(data.degrade(sample, spec, 3), data.degrade(sample, spec, 3))
    assert not np.array_equal(data.degrade(sample, spec, 3), data.degrade(sample, spec, 4))


def test_mask_zeroes_the_fraction():
    sample = np.ones((2, 5, 5))
    degraded = data.degrade(sample, data.DegradationSpec(enums.DegradationKind.MASK, fraction=0.4))
    assert int((degraded == 0).sum()) == 20


def test_degraded_view_keeps_labels_and_split():
    dataset = data.split_classes_half(data.gen_synthetic_grids(4, 3, 4, 4))
    view = data.degraded_view(dataset, data.DegradationSpec(enums.DegradationKind.NOISE, sigma=0.1), seed=7)
    np.testing.assert_array_equal(view.labels, dataset.labels)
    assert view.split is dataset.split
    spec = data.DegradationSpec(enums.DegradationKind.NOISE, sigma=0.1)
    np.testing.assert_array_equal(view.inputs[2], data.degrade(dataset.inputs[2], spec, 9))


def test_degradation_errors():
    with pytest.raises(errors.DegradationError):
        data.DegradationSpec(enums.DegradationKind.LOW_RESOLUTION, factor=1)
    with pytest.raises(errors.DegradationError):
        data.DegradationSpec(enums.DegradationKind.NOISE, sigma=0.0)
    with pytest.raises(errors.DegradationError):
        data.DegradationSpec(enums.DegradationKind.MASK, fraction=1.0)
    lowres = data.DegradationSpec(enums.DegradationKind.LOW_RESOLUTION, factor=3)
    with pytest.raises(errors.DegradationError):
        data.degrade(np.ones((1, 4, 4)), lowres)
    with pytest.raises(errors.DegradationError):
        data.degrade(np.ones(4), lowres)
