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
import itertools

import numpy as np
import pytest

import embedding_distillation.core as core
import embedding_distillation.errors as errors
import embedding_distillation.model as model
import embedding_distillation.loss as loss
import embedding_distillation.sampling as sampling
import tests.test_utils.oracles as oracles

INSTANCES = 1000


def _random_isometry(rng, dim):
    rotation, _ = np.linalg.qr(rng.normal(size=(dim, dim)))
    if rng.random() < 0.5:
        # reflection
        rotation[:, 0] = -rotation[:, 0]
    return rotation, rng.normal(scale=3.0, size=dim)


def test_kd_abs_loss_matches_scalar_recomputation():
    rng = np.random.default_rng(0)
    for _ in range(INSTANCES):
        rows, dim = rng.integers(1, 6), rng.integers(1, 6)
        student, teacher = rng.normal(size=(rows, dim)), rng.normal(size=(rows, dim))
        assert abs(loss.kd_abs_loss(student, teacher).item() - oracles.kd_abs_loss(student, teacher)) <= 1e-9


def test_kd_rel_loss_matches_scalar_recomputation():
    rng = np.random.default_rng(1)
    for _ in range(INSTANCES):
        rows = rng.integers(2, 7)
        student = rng.normal(size=(rows, rng.integers(1, 5)))
        teacher = rng.normal(size=(rows, rng.integers(1, 8)))
        pairs = sampling.enumerate_pairs(rows)
        value = loss.kd_rel_loss(student, teacher, pairs).item()
        assert abs(value - oracles.kd_rel_loss(student, teacher, pairs)) <= 1e-9


def test_hint_loss_matches_scalar_recomputation():
    rng = np.random.default_rng(2)
    for _ in range(INSTANCES):
        pair_count, rows = rng.integers(1, 3), rng.integers(1, 4)
        shapes = [tuple(rng.integers(1, 4, size=rng.integers(1, 4))) for _ in range(pair_count)]
        students = [rng.normal(size=(rows, *shape)) for shape in shapes]
        teachers = [rng.normal(size=(rows, *shape)) for shape in shapes]
        value = loss.hint_loss([
            (model.TapOutput("student", core.Tensor(student)), model.TapOutput("teacher", core.Tensor(teacher)))
            for student, teacher in zip(students, teachers)
        ]).item()
        assert abs(value - oracles.hint_loss(students, teachers)) <= 1e-9


def test_kd_rel_is_invariant_under_isometries():
    rng = np.random.default_rng(3)
    for _ in range(INSTANCES):
        rows, dim = rng.integers(2, 7), rng.integers(1, 5)
        student, teacher = rng.normal(size=(rows, dim)), rng.normal(size=(rows, 6))
        pairs = sampling.enumerate_pairs(rows)
        rotation, translation = _random_isometry(rng, dim)
        moved = student @ rotation + translation
        assert abs(
            loss.kd_rel_loss(moved, teacher, pairs).item() - loss.kd_rel_loss(student, teacher, pairs).item()
        ) < 1e-9


def test_kd_abs_is_not_invariant_under_translation():
    rng = np.random.default_rng(4)
    embeddings = rng.normal(size=(5, 3))
    assert loss.kd_abs_loss(embeddings, embeddings).item() == 0.0
    translated = embeddings + np.array([0.0, 0.5, 0.0])
    assert loss.kd_abs_loss(translated, embeddings).item() == pytest.approx(0.5)
    pairs = sampling.enumerate_pairs(5)
    assert loss.kd_rel_loss(translated, embeddings, pairs).item() == pytest.approx(0.0, abs=1e-12)


def test_identical_embeddings_give_zero():
    embeddings = np.random.default_rng(5).normal(size=(4, 3))
    pairs = list(itertools.combinations(range(4), 2))
    assert loss.kd_rel_loss(embeddings, embeddings, pairs).item() == 0.0
    tap = model.TapOutput("tap", core.Tensor(embeddings))
    assert loss.hint_loss([(tap, tap)]).item() == 0.0


def test_kd_rel_accepts_different_dimensions():
    student = np.array([[0.0], [3.0]])
    teacher = np.array([[0.0, 0.0], [3.0, 4.0]])
    assert loss.kd_rel_loss(student, teacher, [(0, 1)]).item() == pytest.approx(2.0)


def test_input_errors():
    with pytest.raises(errors.LossInputError):
        loss.kd_abs_loss(np.ones((2, 3)), np.ones((2, 4)))
    with pytest.raises(errors.LossInputError):
        loss.kd_rel_loss(np.ones((2, 3)), np.ones((3, 3)), [(0, 1)])
    with pytest.raises(errors.LossInputError):
        loss.kd_rel_loss(np.ones((2, 3)), np.ones((2, 3)), [])
    with pytest.raises(errors.LossInputError):
        loss.kd_rel_loss(np.ones((2, 3)), np.ones((2, 3)), [(0, 2)])
    with pytest.raises(errors.LossInputError):
        loss.kd_rel_loss(np.ones((2, 3)), np.ones((2, 3)), [(1, 1)])
    with pytest.raises(errors.LossInputError):
        loss.hint_loss([])
    with pytest.raises(errors.LossInputError):
        loss.hint_loss([(model.TapOutput("s", core.Tensor(np.ones((2, 3)))),
                         model.TapOutput("t", core.Tensor(np.ones((2, 4)))))])
