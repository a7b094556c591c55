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
import embedding_distillation.core as core
import embedding_distillation.loss.metric_losses as metric_losses
import embedding_distillation.loss.distillation_losses as distillation_losses
import embedding_distillation.loss.attention as attention


@dataclasses.dataclass(frozen=True)
class LossWeights:
    margin: float = constants.DEFAULT_MARGIN
    lambda_: float = constants.DEFAULT_LAMBDA_RELATIVE
    mu: float = constants.DEFAULT_MU
    kappa: float = constants.DEFAULT_KAPPA

    def __post_init__(self):
        for name, value in dataclasses.asdict(self).items():
            if not math.isfinite(value) or value < 0:
                raise errors.LossInputError(f"loss weight {name.rstrip('_')} must be finite and >= 0, got {value}")


@dataclasses.dataclass
class BatchContext:
    """
    Everything total_loss needs about one batch. tap_pairs holds (student TapOutput, teacher TapOutput)
    pairs used by both the hint and the attention terms.
    """
    student_embeddings: core.Tensor
    triplets: typing.Sequence = ()
    pairs: typing.Sequence = ()
    teacher_embeddings: typing.Optional[core.Tensor] = None
    tap_pairs: typing.Sequence = ()


@dataclasses.dataclass
class LossTerms:
    total: core.Tensor
    ml: core.Tensor
    kd: core.Tensor
    hint: core.Tensor
    at: core.Tensor

    def values(self) -> dict:
        return {
            "loss_total": self.total.item(),
            "loss_ml": self.ml.item(),
            "loss_kd": self.kd.item(),
            "loss_hint": self.hint.item(),
            "loss_at": self.at.item(),
        }


def _zero() -> core.Tensor:
    return core.Tensor(0.0)


def total_loss(context: BatchContext, weights: LossWeights, mode: enums.DistillationMode,
               use_hint=False, use_attention=False, squared=False, include_ml=True) -> LossTerms:
    """
    L = L_ml + lambda * L_kd + mu * L_hint + kappa * L_at, each term returned already weighted.
    Terms with a zero weight are skipped entirely, a zero lambda therefore reproduces the baseline loss exactly.
    :param include_ml: False drops the metric learning term (label free batches)
    """
    distills = mode is not enums.DistillationMode.BASELINE
    if distills and context.teacher_embeddings is None:
        raise errors.MissingTeacherError(f"{mode.value} requires teacher embeddings")
    if (use_hint or use_attention) and (
        not context.tap_pairs or any(teacher_tap is None for _, teacher_tap in context.tap_pairs)
    ):
        raise errors.MissingTeacherError("hint and attention terms require paired teacher taps")
    terms = []
    ml = metric_losses.batch_triplet_loss(
        context.student_embeddings, context.triplets, weights.margin, squared
    ) if include_ml else _zero()
    if include_ml:
        terms.append(ml)
    kd = _zero()
    if distills and weights.lambda_ != 0:
        if mode is enums.DistillationMode.ABSOLUTE:
            kd = distillation_losses.kd_abs_loss(context.student_embeddings, context.teacher_embeddings, squared)
        else:
            kd = distillation_losses.kd_rel_loss(
                context.student_embeddings, context.teacher_embeddings, context.pairs, squared
            )
        kd = kd * weights.lambda_
        terms.append(kd)
    hint = _zero()
    if use_hint and weights.mu != 0:
        hint = distillation_losses.hint_loss(context.tap_pairs) * weights.mu
        terms.append(hint)
    at = _zero()
    if use_attention and weights.kappa != 0:
        at = attention.batch_attention_loss(context.tap_pairs) * weights.kappa
        terms.append(at)
    if not terms:
        raise errors.LossInputError("total_loss: no active loss term")
    total = terms[0]
    for term in terms[1:]:
        total = total + term
    return LossTerms(total, ml, kd, hint, at)
