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
import embedding_distillation.data.dataset as dataset_module


def _check_counts(num_classes, per_class, intra_std, inter_scale):
    if num_classes < 4 or per_class < 2:
        raise errors.DatasetError(
            f"synthetic data requires at least 4 classes of 2 samples, got {num_classes} classes of {per_class}"
        )
    if intra_std < 0 or inter_scale <= 0:
        raise errors.DatasetError(
            f"intra_std must be >= 0 and inter_scale > 0, got {intra_std} and {inter_scale}"
        )


def _clusters(sample_shape, num_classes, per_class, intra_std, inter_scale, seed):
    rng = np.random.default_rng(seed)
    prototypes = rng.uniform(-inter_scale, inter_scale, size=(num_classes, *sample_shape))
    labels = np.repeat(np.arange(num_classes), per_class)
    inputs = prototypes[labels] + rng.normal(0.0, intra_std, size=(len(labels), *sample_shape))
    return inputs, labels, prototypes


def gen_synthetic_clusters(num_classes=constants.DEFAULT_NUM_CLASSES, per_class=constants.DEFAULT_PER_CLASS,
                           input_dim=constants.DEFAULT_INPUT_DIM, intra_std=constants.DEFAULT_INTRA_STD,
                           inter_scale=constants.DEFAULT_INTER_SCALE, seed=0) -> dataset_module.Dataset:
    """
    Class prototypes uniform in [-inter_scale, inter_scale]^input_dim, samples are prototypes
    plus N(0, intra_std^2) noise
    """
    _check_counts(num_classes, per_class, intra_std, inter_scale)
    if input_dim < 1:
        raise errors.DatasetError(f"input_dim must be positive, got {input_dim}")
    inputs, labels, _ = _clusters((input_dim,), num_classes, per_class, intra_std, inter_scale, seed)
    return dataset_module.Dataset(inputs, labels, f"synthetic_clusters_{num_classes}x{per_class}_seed{seed}")


def gen_synthetic_grids(num_classes=constants.DEFAULT_NUM_CLASSES, per_class=constants.DEFAULT_PER_CLASS,
                        height=constants.DEFAULT_GRID_SIZE, width=constants.DEFAULT_GRID_SIZE, channels=1,
                        intra_std=constants.DEFAULT_INTRA_STD,
                        inter_scale=constants.DEFAULT_INTER_SCALE, seed=0) -> dataset_module.Dataset:
    """
    Same generator over channels first (channels, height, width) grids
    """
    _check_counts(num_classes, per_class, intra_std, inter_scale)
    if min(height, width, channels) < 1:
        raise errors.DatasetError(f"grid dimensions must be positive, got {(height, width, channels)}")
    inputs, labels, _ = _clusters((channels, height, width), num_classes, per_class, intra_std, inter_scale, seed)
    return dataset_module.Dataset(inputs, labels, f"synthetic_grids_{num_classes}x{per_class}_seed{seed}")
