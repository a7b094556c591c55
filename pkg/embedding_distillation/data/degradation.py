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
import embedding_distillation.data.dataset as dataset_module


@dataclasses.dataclass(frozen=True)
class DegradationSpec:
    kind: enums.DegradationKind
    factor: int = 2
    sigma: float = 0.0
    fraction: float = 0.0

    def __post_init__(self):
        if self.kind is enums.DegradationKind.LOW_RESOLUTION and (
                int(self.factor) != self.factor or self.factor < 2):
            raise errors.DegradationError(f"lowres factor must be an integer >= 2, got {self.factor}")
        if self.kind is enums.DegradationKind.NOISE and not self.sigma > 0:
            raise errors.DegradationError(f"noise sigma must be > 0, got {self.sigma}")
        if self.kind is enums.DegradationKind.MASK and not 0 < self.fraction < 1:
            raise errors.DegradationError(f"mask fraction must be in (0, 1), got {self.fraction}")

    @classmethod
    def from_dict(cls, spec_dict):
        return cls(
            enums.DegradationKind(spec_dict[enums.TrainingConfigKeys.DEGRADATION_KIND.value]),
            int(spec_dict.get(enums.TrainingConfigKeys.DEGRADATION_FACTOR.value, 2)),
            float(spec_dict.get(enums.TrainingConfigKeys.DEGRADATION_SIGMA.value, 0.0)),
            float(spec_dict.get(enums.TrainingConfigKeys.DEGRADATION_FRACTION.value, 0.0)),
        )

    def to_dict(self):
        return {
            enums.TrainingConfigKeys.DEGRADATION_KIND.value: self.kind.value,
            enums.TrainingConfigKeys.DEGRADATION_FACTOR.value: self.factor,
            enums.TrainingConfigKeys.DEGRADATION_SIGMA.value: self.sigma,
            enums.TrainingConfigKeys.DEGRADATION_FRACTION.value: self.fraction,
        }


def _low_resolution(sample, factor):
    if sample.ndim != 3:
        raise errors.DegradationError(f"lowres requires a (C, H, W) grid sample, got shape {sample.shape}")
    channels, height, width = sample.shape
    if height % factor or width % factor:
        raise errors.DegradationError(f"lowres factor {factor} doesn't divide grid size {height}x{width}")
    pooled = sample.reshape(channels, height // factor, factor, width // factor, factor).mean(axis=(2, 4))
    return np.repeat(np.repeat(pooled, factor, axis=1), factor, axis=2)


def degrade(sample, spec: DegradationSpec, seed: typing.Optional[int] = 0) -> np.ndarray:
    """
    :return: a degraded copy of sample with the same shape, deterministic given (sample, spec, seed)
    """
    sample = np.asarray(sample, dtype=np.float64)
    rng = np.random.default_rng(seed)
    if spec.kind is enums.DegradationKind.LOW_RESOLUTION:
        return _low_resolution(sample, spec.factor)
    if spec.kind is enums.DegradationKind.NOISE:
        return sample + rng.normal(0.0, spec.sigma, size=sample.shape)
    masked = sample.copy().reshape(-1)
    masked[rng.choice(masked.size, int(round(spec.fraction * masked.size)), replace=False)] = 0.0
    return masked.reshape(sample.shape)


def degraded_view(dataset: dataset_module.Dataset, spec: DegradationSpec, seed=0) -> dataset_module.Dataset:
    """
    Same labels and split, sample i degraded with seed + i
    """
    degraded = np.stack([degrade(sample, spec, seed + index) for index, sample in enumerate(dataset.inputs)])
    return dataset.with_inputs(degraded, name=f"{dataset.name}_{spec.kind.value}")
