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
import typing

import numpy as np

import embedding_distillation.enums as enums
import embedding_distillation.errors as errors


@dataclasses.dataclass(frozen=True)
class DatasetSplit:
    train_classes: tuple
    test_classes: tuple
    train_indices: np.ndarray
    validation_indices: np.ndarray
    test_indices: np.ndarray

    def indices(self, partition: enums.DatasetPartition) -> np.ndarray:
        if partition is enums.DatasetPartition.TRAIN:
            return self.train_indices
        if partition is enums.DatasetPartition.VALIDATION:
            return self.validation_indices
        return self.test_indices


@dataclasses.dataclass(frozen=True)
class Dataset:
    """
    inputs is (N, D) for vectors and (N, C, H, W) for grids
    """
    inputs: np.ndarray
    labels: np.ndarray
    name: str = ""
    split: typing.Optional[DatasetSplit] = None

    def __post_init__(self):
        inputs = np.array(self.inputs, dtype=np.float64)
        labels = np.array(self.labels, dtype=np.int64)
        inputs.setflags(write=False)
        labels.setflags(write=False)
        object.__setattr__(self, "inputs", inputs)
        object.__setattr__(self, "labels", labels)
        if inputs.ndim not in (2, 4):
            raise errors.DatasetError(f"{self.name}: samples must be vectors or grids, got inputs of shape "
                                      f"{inputs.shape}")
        if len(inputs) != len(labels):
            raise errors.DatasetError(f"{self.name}: {len(inputs)} samples for {len(labels)} labels")
        classes, counts = np.unique(labels, return_counts=True)
        if np.any(counts < 2):
            raise errors.DatasetError(
                f"{self.name}: class {classes[np.argmax(counts < 2)]} has less than 2 samples"
            )
        if self.split is not None and set(self.split.train_classes) & set(self.split.test_classes):
            raise errors.DatasetError(f"{self.name}: train and test classes overlap")

    def __len__(self):
        return len(self.labels)

    @property
    def input_kind(self) -> enums.InputKind:
        return enums.InputKind.VECTOR if self.inputs.ndim == 2 else enums.InputKind.GRID

    @property
    def sample_shape(self) -> tuple:
        return self.inputs.shape[1:]

    @property
    def classes(self) -> np.ndarray:
        return np.unique(self.labels)

    def partition(self, partition: enums.DatasetPartition) -> np.ndarray:
        if self.split is None:
            raise errors.DatasetError(f"{self.name}: dataset has no split")
        return self.split.indices(partition)

    def with_split(self, split: DatasetSplit):
        return dataclasses.replace(self, split=split)

    def with_inputs(self, inputs, name=None):
        return dataclasses.replace(self, inputs=inputs, name=self.name if name is None else name)
