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

import embedding_distillation.api as api
import embedding_distillation.model as model
from tests.functional_tests import default_setup, median_test_recall

pytestmark = pytest.mark.timeout(900)


def test_unlabeled_data_does_not_hurt():
    labeled_only = median_test_recall(mode="distill_rel", semi={"labeled_fraction": 0.5, "use_unlabeled": False})
    mixed = median_test_recall(mode="distill_rel", semi={"labeled_fraction": 0.5, "use_unlabeled": True})
    assert mixed >= labeled_only


def test_kd_only_student_beats_an_untrained_one():
    experiment, dataset, _ = default_setup()
    untrained = float(np.median([
        api.evaluate_net(model.init_params(experiment.student, seed), dataset, (1, )).recall(1)
        for seed in experiment.seeds
    ]))
    assert median_test_recall(mode="distill_rel", semi={"kd_only": True}) > untrained
