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
import math
import typing

import embedding_distillation.constants as constants
import embedding_distillation.enums as enums
import embedding_distillation.errors as errors
import embedding_distillation.loss.objective as objective
import embedding_distillation.data.degradation as degradation


@dataclasses.dataclass(frozen=True)
class SemiSupervisedConfig:
    labeled_fraction: float = constants.DEFAULT_LABELED_FRACTION
    use_unlabeled: bool = True
    kd_only: bool = False

    @classmethod
    def from_dict(cls, semi_dict):
        return cls(
            float(semi_dict.get(enums.TrainingConfigKeys.LABELED_FRACTION.value, constants.DEFAULT_LABELED_FRACTION)),
            bool(semi_dict.get(enums.TrainingConfigKeys.USE_UNLABELED.value, True)),
            bool(semi_dict.get(enums.TrainingConfigKeys.KD_ONLY.value, False)),
        )

    def to_dict(self):
        return {
            enums.TrainingConfigKeys.LABELED_FRACTION.value: self.labeled_fraction,
            enums.TrainingConfigKeys.USE_UNLABELED.value: self.use_unlabeled,
            enums.TrainingConfigKeys.KD_ONLY.value: self.kd_only,
        }


@dataclasses.dataclass(frozen=True)
class TrainConfig:
    mode: enums.DistillationMode = enums.DistillationMode.BASELINE
    use_hint: bool = False
    use_attention: bool = False
    weights: objective.LossWeights = dataclasses.field(default_factory=objective.LossWeights)
    lr: float = constants.DEFAULT_LEARNING_RATE
    adam_beta1: float = constants.DEFAULT_ADAM_BETA1
    adam_beta2: float = constants.DEFAULT_ADAM_BETA2
    adam_eps: float = constants.DEFAULT_ADAM_EPS
    batch_size: int = constants.DEFAULT_BATCH_SIZE
    classes_per_batch: int = constants.DEFAULT_CLASSES_PER_BATCH
    epochs: int = constants.DEFAULT_EPOCHS
    seed: int = 0
    # (teacher tap, student tap) layer name pairs
    tap_pairs: tuple = ()
    squared_distances: bool = False
    semi: typing.Optional[SemiSupervisedConfig] = None
    cross_quality: typing.Optional[degradation.DegradationSpec] = None

    def __post_init__(self):
        object.__setattr__(self, "tap_pairs", tuple(tuple(pair) for pair in self.tap_pairs))
        if not (math.isfinite(self.lr) and self.lr > 0):
            raise errors.TrainConfigError(f"lr must be > 0, got {self.lr}")
        if not (0 <= self.adam_beta1 < 1 and 0 <= self.adam_beta2 < 1 and self.adam_eps > 0):
            raise errors.TrainConfigError(
                f"invalid Adam settings: beta1={self.adam_beta1}, beta2={self.adam_beta2}, eps={self.adam_eps}"
            )
        if self.batch_size < 2 or self.epochs < 0:
            raise errors.TrainConfigError(
                f"batch_size must be >= 2 and epochs >= 0, got {self.batch_size} and {self.epochs}"
            )
        if self.semi is not None:
            if not 0 < self.semi.labeled_fraction <= 1:
                raise errors.TrainConfigError(
                    f"labeled_fraction must be in (0, 1], got {self.semi.labeled_fraction}"
                )
            if self.mode is enums.DistillationMode.BASELINE and (self.semi.kd_only or self.semi.use_unlabeled):
                raise errors.TrainConfigError("unlabeled data and kd_only require a distillation mode")
        if (self.use_hint or self.use_attention) and not self.tap_pairs:
            raise errors.TrainConfigError("hint and attention losses require tap_pairs")
        if any(len(pair) != 2 for pair in self.tap_pairs):
            raise errors.TrainConfigError(f"tap_pairs must be (teacher tap, student tap) pairs, got {self.tap_pairs}")

    @property
    def needs_teacher(self) -> bool:
        return self.mode is not enums.DistillationMode.BASELINE or self.use_hint or self.use_attention

    @property
    def kd_only(self) -> bool:
        return self.semi is not None and self.semi.kd_only

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)

    def as_baseline(self):
        return self.replace(mode=enums.DistillationMode.BASELINE, use_hint=False, use_attention=False, semi=None)

    @classmethod
    def from_dict(cls, training_dict, seed=None):
        keys = enums.TrainingConfigKeys
        mode = enums.DistillationMode(training_dict.get(keys.MODE.value, enums.DistillationMode.BASELINE.value))
        default_lambda = constants.DEFAULT_LAMBDA_ABSOLUTE if mode is enums.DistillationMode.ABSOLUTE \
            else constants.DEFAULT_LAMBDA_RELATIVE
        seeds = training_dict.get(keys.SEEDS.value, constants.DEFAULT_SEEDS)
        semi = training_dict.get(keys.SEMI.value)
        cross_quality = training_dict.get(keys.CROSS_QUALITY.value)
        return cls(
            mode=mode,
            use_hint=bool(training_dict.get(keys.USE_HINT.value, False)),
            use_attention=bool(training_dict.get(keys.USE_ATTENTION.value, False)),
            weights=objective.LossWeights(
                float(training_dict.get(keys.MARGIN.value, constants.DEFAULT_MARGIN)),
                float(training_dict.get(keys.LAMBDA.value, default_lambda)),
                float(training_dict.get(keys.MU.value, constants.DEFAULT_MU)),
                float(training_dict.get(keys.KAPPA.value, constants.DEFAULT_KAPPA)),
            ),
            lr=float(training_dict.get(keys.LR.value, constants.DEFAULT_LEARNING_RATE)),
            adam_beta1=float(training_dict.get(keys.ADAM_BETA1.value, constants.DEFAULT_ADAM_BETA1)),
            adam_beta2=float(training_dict.get(keys.ADAM_BETA2.value, constants.DEFAULT_ADAM_BETA2)),
            adam_eps=float(training_dict.get(keys.ADAM_EPS.value, constants.DEFAULT_ADAM_EPS)),
            batch_size=int(training_dict.get(keys.BATCH_SIZE.value, constants.DEFAULT_BATCH_SIZE)),
            classes_per_batch=int(training_dict.get(keys.CLASSES_PER_BATCH.value,
                                                    constants.DEFAULT_CLASSES_PER_BATCH)),
            epochs=int(training_dict.get(keys.EPOCHS.value, constants.DEFAULT_EPOCHS)),
            seed=int(seeds[0] if seed is None else seed),
            tap_pairs=tuple(tuple(pair) for pair in training_dict.get(keys.TAP_PAIRS.value, ())),
            squared_distances=bool(training_dict.get(keys.SQUARED_DISTANCES.value, False)),
            semi=None if semi is None else SemiSupervisedConfig.from_dict(semi),
            cross_quality=None if cross_quality is None else degradation.DegradationSpec.from_dict(cross_quality),
        )

    def to_dict(self):
        keys = enums.TrainingConfigKeys
        return {
            keys.MODE.value: self.mode.value,
            keys.USE_HINT.value: self.use_hint,
            keys.USE_ATTENTION.value: self.use_attention,
            keys.MARGIN.value: self.weights.margin,
            keys.LAMBDA.value: self.weights.lambda_,
            keys.MU.value: self.weights.mu,
            keys.KAPPA.value: self.weights.kappa,
            keys.LR.value: self.lr,
            keys.ADAM_BETA1.value: self.adam_beta1,
            keys.ADAM_BETA2.value: self.adam_beta2,
            keys.ADAM_EPS.value: self.adam_eps,
            keys.BATCH_SIZE.value: self.batch_size,
            keys.CLASSES_PER_BATCH.value: self.classes_per_batch,
            keys.EPOCHS.value: self.epochs,
            keys.SEEDS.value: [self.seed],
            keys.TAP_PAIRS.value: [list(pair) for pair in self.tap_pairs],
            keys.SQUARED_DISTANCES.value: self.squared_distances,
            keys.SEMI.value: None if self.semi is None else self.semi.to_dict(),
            keys.CROSS_QUALITY.value: None if self.cross_quality is None else self.cross_quality.to_dict(),
        }
