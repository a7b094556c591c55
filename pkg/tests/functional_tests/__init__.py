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
import functools

import numpy as np

import embedding_distillation.constants as constants
import embedding_distillation.api as api


@functools.lru_cache(maxsize=None)
def default_setup():
    """
    Packaged experiment, its dataset and one trained teacher per seed, shared by every directional test
    """
    experiment = api.load_experiment(constants.DEFAULT_EXPERIMENT_FILE)
    dataset = api.load_dataset(experiment)
    teachers = {seed: api.train_teacher(experiment, dataset, seed).best_net for seed in experiment.seeds}
    return experiment, dataset, teachers


def distilled_test_recall(experiment, dataset, teacher, seed, **training_changes) -> float:
    changed = dataclasses.replace(experiment, training={**experiment.training, **training_changes})
    result = api.distill_student(changed, dataset, teacher, seed)
    return api.evaluate_net(result.best_net, result.eval_dataset, (1, )).recall(1)


def median_test_recall(**training_changes) -> float:
    """
    Median over the packaged seeds of the test Recall@1 of students distilled with training_changes
    """
    experiment, dataset, teachers = default_setup()
    return float(np.median([
        distilled_test_recall(experiment, dataset, teachers[seed], seed, **training_changes)
        for seed in experiment.seeds
    ]))
