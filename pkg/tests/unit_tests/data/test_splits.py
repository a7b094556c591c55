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


def test_split_classes_half():
    dataset = data.split_classes_half(data.gen_synthetic_clusters(20, 50, 4), validation_fraction=0.2, seed=0)
    split = dataset.split
    assert split.train_classes == tuple(range(10))
    assert split.test_classes == tuple(range(10, 20))
    train = dataset.partition(enums.DatasetPartition.TRAIN)
    validation = dataset.partition(enums.DatasetPartition.VALIDATION)
    test = dataset.partition(enums.DatasetPartition.TEST)
    assert len(train) == 400 and len(validation) == 100 and len(test) == 500
    assert not set(train.tolist()) & set(validation.tolist())
    assert set(dataset.labels[test].tolist()) == set(range(10, 20))
    assert set(dataset.labels[validation].tolist()) == set(range(10))


def test_odd_class_count_favors_training():
    dataset = data.split_classes_half(data.gen_synthetic_clusters(5, 4, 2))
    assert dataset.split.train_classes == (0, 1, 2)
    assert dataset.split.test_classes == (3, 4)


def test_validation_keeps_two_training_samples():
    dataset = data.split_classes_half(data.gen_synthetic_clusters(4, 3, 2), validation_fraction=0.9)
    train_labels = dataset.labels[dataset.partition(enums.DatasetPartition.TRAIN)]
    assert np.all(np.bincount(train_labels) >= 2)


def test_split_errors():
    dataset = data.gen_synthetic_clusters(4, 3, 2)
    with pytest.raises(errors.DatasetError):
        data.split_classes_half(dataset, validation_fraction=1.0)
    with pytest.raises(errors.DatasetError):
        data.split_classes_half(data.Dataset(np.ones((2, 2)), [0, 0]))


def test_split_labeled():
    labels = np.repeat(np.arange(4), 10)
    labeled, unlabeled = data.split_labeled(np.arange(40), labels, 0.3, seed=0)
    assert len(labeled) == 12 and len(unlabeled) == 28
    assert not set(labeled.tolist()) & set(unlabeled.tolist())
    assert np.all(np.bincount(labels[labeled]) == 3)
    few_labeled, _ = data.split_labeled(np.arange(40), labels, 0.01, seed=0)
    assert np.all(np.bincount(labels[few_labeled]) == 2)
    all_labeled, none_left = data.split_labeled(np.arange(40), labels, 1.0)
    assert len(all_labeled) == 40 and len(none_left) == 0
    with pytest.raises(errors.DatasetError):
        data.split_labeled(np.arange(40), labels, 0.0)


def test_evaluation_only_split():
    dataset = data.evaluation_only_split(data.gen_synthetic_clusters(4, 3, 2))
    assert len(dataset.partition(enums.DatasetPartition.TEST)) == 12
    assert len(dataset.partition(enums.DatasetPartition.TRAIN)) == 0
