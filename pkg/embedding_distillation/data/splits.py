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
import math

import numpy as np

import embedding_distillation.constants as constants
import embedding_distillation.errors as errors
import embedding_distillation.data.dataset as dataset_module


def split_classes_half(dataset: dataset_module.Dataset, validation_fraction=constants.DEFAULT_VALIDATION_FRACTION,
                       seed=0) -> dataset_module.Dataset:
    """
    Lower half of the sorted class ids trains, upper half tests. An odd class count gives the extra class
    to training. Each training class keeps a seeded validation_fraction of its samples for validation.
    """
    classes = np.unique(dataset.labels)
    if len(classes) < 2:
        raise errors.DatasetError(f"{dataset.name}: a class disjoint split needs 2 classes, got {len(classes)}")
    if not 0 <= validation_fraction < 1:
        raise errors.DatasetError(f"validation fraction must be in [0, 1), got {validation_fraction}")
    train_count = math.ceil(len(classes) / 2)
    train_classes, test_classes = classes[:train_count], classes[train_count:]
    rng = np.random.default_rng(seed)
    train_indices, validation_indices = [], []
    for label in train_classes:
        members = rng.permutation(np.flatnonzero(dataset.labels == label))
        validation_count = min(int(round(len(members) * validation_fraction)), len(members) - 2)
        validation_indices.append(members[:validation_count])
        train_indices.append(members[validation_count:])
    split = dataset_module.DatasetSplit(
        tuple(int(label) for label in train_classes),
        tuple(int(label) for label in test_classes),
        np.sort(np.concatenate(train_indices)),
        np.sort(np.concatenate(validation_indices)),
        np.flatnonzero(np.isin(dataset.labels, test_classes)),
    )
    return dataset.with_split(split)


def split_labeled(indices, labels, fraction=constants.DEFAULT_LABELED_FRACTION, seed=0) -> tuple:
    """
    Per class split of training indices into a labeled and an unlabeled part.
    Every class keeps at least 2 labeled samples so that labeled batches can still be mined.
    :return: (labeled indices, unlabeled indices), both sorted
    """
    if not 0 < fraction <= 1:
        raise errors.DatasetError(f"labeled fraction must be in (0, 1], got {fraction}")
    indices = np.asarray(indices, dtype=np.int64)
    labels = np.asarray(labels)
    rng = np.random.default_rng(seed)
    labeled, unlabeled = [], []
    for label in np.unique(labels[indices]):
        members = rng.permutation(indices[labels[indices] == label])
        labeled_count = min(len(members), max(2, int(round(len(members) * fraction))))
        labeled.append(members[:labeled_count])
        unlabeled.append(members[labeled_count:])
    return np.sort(np.concatenate(labeled)), np.sort(np.concatenate(unlabeled)).astype(np.int64)


def evaluation_only_split(dataset: dataset_module.Dataset) -> dataset_module.Dataset:
    """
    Every sample in the test partition, for datasets only used to evaluate a trained net
    """
    classes = tuple(int(label) for label in dataset.classes)
    empty = np.zeros(0, dtype=np.int64)
    return dataset.with_split(dataset_module.DatasetSplit((), classes, empty, empty, np.arange(len(dataset))))
