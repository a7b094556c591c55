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

import embedding_distillation.core as core
import embedding_distillation.enums as enums
import embedding_distillation.errors as errors
import embedding_distillation.model as model
import embedding_distillation.loss as loss
import embedding_distillation.sampling as sampling


@pytest.fixture
def context():
    rng = np.random.default_rng(0)
    labels = np.repeat(np.arange(3), 2)
    student = core.Tensor(rng.normal(size=(6, 3)))
    teacher = core.Tensor(rng.normal(size=(6, 3)))
    batch = sampling.build_triplet_batch(np.arange(6), student, labels)
    student_tap = model.TapOutput("hidden_0", core.Tensor(rng.normal(size=(6, 4))))
    teacher_tap = model.TapOutput("hidden_0", core.Tensor(rng.normal(size=(6, 4))))
    return loss.BatchContext(student, batch.triplets, batch.pairs, teacher, [(student_tap, teacher_tap)])


def test_total_is_the_sum_of_weighted_terms(context):
    weights = loss.LossWeights(margin=0.2, lambda_=3.0, mu=0.5, kappa=2.0)
    terms = loss.total_loss(context, weights, enums.DistillationMode.RELATIVE, use_hint=True, use_attention=True)
    ml = loss.batch_triplet_loss(context.student_embeddings, context.triplets, 0.2).item()
    kd = loss.kd_rel_loss(context.student_embeddings, context.teacher_embeddings, context.pairs).item()
    hint = loss.hint_loss(context.tap_pairs).item()
    at = loss.batch_attention_loss(context.tap_pairs).item()
    assert terms.ml.item() == pytest.approx(ml)
    assert terms.kd.item() == pytest.approx(3.0 * kd)
    assert terms.hint.item() == pytest.approx(0.5 * hint)
    assert terms.at.item() == pytest.approx(2.0 * at)
    assert terms.total.item() == pytest.approx(ml + 3.0 * kd + 0.5 * hint + 2.0 * at)
    assert set(terms.values()) == {"loss_total", "loss_ml", "loss_kd", "loss_hint", "loss_at"}


def test_absolute_mode_uses_kd_abs(context):
    terms = loss.total_loss(context, loss.LossWeights(lambda_=2.0), enums.DistillationMode.ABSOLUTE)
    expected = loss.kd_abs_loss(context.student_embeddings, context.teacher_embeddings).item()
    assert terms.kd.item() == pytest.approx(2.0 * expected)


def test_zero_lambda_equals_baseline(context):
    baseline = loss.total_loss(context, loss.LossWeights(), enums.DistillationMode.BASELINE)
    for mode in (enums.DistillationMode.ABSOLUTE, enums.DistillationMode.RELATIVE):
        distilled = loss.total_loss(context, loss.LossWeights(lambda_=0.0), mode)
        assert distilled.total.item() == baseline.total.item()
        assert distilled.kd.item() == 0.0


def test_kd_only(context):
    terms = loss.total_loss(context, loss.LossWeights(lambda_=1.0), enums.DistillationMode.RELATIVE,
                            include_ml=False)
    assert terms.ml.item() == 0.0
    assert terms.total.item() == pytest.approx(terms.kd.item())


def test_gradient_reaches_the_student_only():
    rng = np.random.default_rng(1)
    labels = np.repeat(np.arange(2), 2)
    teacher = core.Tensor(rng.normal(size=(4, 2)))
    with core.Tape() as tape:
        student = tape.watch(rng.normal(size=(4, 2)))
        batch = sampling.build_triplet_batch(np.arange(4), student, labels)
        terms = loss.total_loss(
            loss.BatchContext(student, batch.triplets, batch.pairs, teacher),
            loss.LossWeights(lambda_=1.0), enums.DistillationMode.RELATIVE,
        )
    assert not tape.is_recorded(teacher)
    assert core.backward(tape, terms.total)[student.node_id].shape == (4, 2)


def test_errors(context):
    with pytest.raises(errors.MissingTeacherError):
        loss.total_loss(
            loss.BatchContext(context.student_embeddings, context.triplets, context.pairs),
            loss.LossWeights(), enums.DistillationMode.RELATIVE,
        )
    with pytest.raises(errors.MissingTeacherError):
        loss.total_loss(
            loss.BatchContext(context.student_embeddings, context.triplets, context.pairs, context.teacher_embeddings),
            loss.LossWeights(mu=1.0), enums.DistillationMode.BASELINE, use_hint=True,
        )
    with pytest.raises(errors.LossInputError):
        loss.total_loss(context, loss.LossWeights(), enums.DistillationMode.BASELINE, include_ml=False)
    with pytest.raises(errors.LossInputError):
        loss.LossWeights(lambda_=-1.0)
    with pytest.raises(errors.LossInputError):
        loss.LossWeights(mu=float("nan"))
