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
import pytest

import embedding_distillation.constants as constants
import embedding_distillation.trainer as trainer
from tests.functional_tests import default_setup, median_test_recall

pytestmark = pytest.mark.timeout(900)


def test_teachers_learn_the_training_classes():
    _, dataset, teachers = default_setup()
    for teacher in teachers.values():
        assert trainer.validation_recall_at_1(teacher, dataset) > 0.9


def test_relative_teacher_beats_baseline_and_absolute():
    baseline = median_test_recall(mode="baseline")
    relative = median_test_recall(mode="distill_rel")
    absolute = median_test_recall(mode="distill_abs", **{"lambda": constants.DEFAULT_LAMBDA_ABSOLUTE})
    assert relative >= baseline + 0.02
    assert relative >= absolute


def test_cross_quality_student_beats_degraded_baseline():
    noise = {"kind": "noise", "sigma": 2.0}
    baseline = median_test_recall(mode="baseline", cross_quality=noise)
    relative = median_test_recall(mode="distill_rel", cross_quality=noise)
    assert relative >= baseline
