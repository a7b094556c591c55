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
import itertools

import numpy as np

import octobot_commons.logging as logging

import embedding_distillation.constants as constants
import embedding_distillation.errors as errors
import embedding_distillation.core as core
import embedding_distillation.loss.distillation_losses as distillation_losses
import embedding_distillation.trainer.optimizer as optimizer

RELATIVE_EMBEDDING_LOGGER_NAME = "RelativeEmbeddingFit"
POINTS_KEY = "points"


@dataclasses.dataclass
class RelativeEmbeddingFit:
    points: np.ndarray
    loss: float
    initial_loss: float
    steps: int
    restarts: int

    @property
    def loss_ratio(self) -> float:
        return self.loss / self.initial_loss if self.initial_loss > 0 else 0.0


def distance_matrix(points) -> np.ndarray:
    points = np.asarray(points, dtype=np.float64)
    return np.sqrt(np.square(points[:, None, :] - points[None, :, :]).sum(axis=-1))


def _relative_loss(points, target, pair_indices) -> core.Tensor:
    return distillation_losses.relative_distance_loss(points, target, pair_indices)


def _fit_once(initial_points, target, pair_indices, steps, lr, patience):
    params = {POINTS_KEY: initial_points}
    state = optimizer.OptimizerState.zeros_like(params)
    best_points, best_loss = initial_points, None
    stale_steps = step = 0
    for step in range(1, steps + 1):
        with core.Tape() as tape:
            points = tape.watch(params[POINTS_KEY])
            loss = _relative_loss(points, target, pair_indices)
        loss_value = loss.item()
        if best_loss is None or loss_value < best_loss:
            best_points, best_loss, stale_steps = params[POINTS_KEY], loss_value, 0
        else:
            stale_steps += 1
            if stale_steps >= patience:
                # plateau: restart from the best point with a smaller step
                lr /= 2
                stale_steps = 0
                params = {POINTS_KEY: best_points}
                if lr < constants.MIN_FIT_LEARNING_RATE:
                    break
                continue
        gradient = core.backward(tape, loss)[points.node_id]
        params, state = optimizer.adam_step(params, {POINTS_KEY: gradient}, state, lr=lr)
    return best_points, best_loss, step


def fit_relative_embedding(target, dim=2, steps=constants.DEFAULT_FIT_STEPS,
                           lr=constants.DEFAULT_FIT_LEARNING_RATE, seed=0, restarts=5,
                           patience=constants.DEFAULT_FIT_PATIENCE, tolerance=1e-4,
                           target_is_distances=False) -> RelativeEmbeddingFit:
    """
    Multidimensional scaling through the relative distillation loss: free points in dim dimensions
    are moved by Adam until their pairwise distances match the target ones.
    :param target: (N, d) target points, or an (N, N) distance matrix when target_is_distances
    :param lr: initial learning rate relative to the mean target distance, halved on plateaus
    :param restarts: random initializations tried until the kept fit falls under tolerance times
    its own initial loss
    """
    logger = logging.get_logger(RELATIVE_EMBEDDING_LOGGER_NAME)
    distances = np.asarray(target, dtype=np.float64) if target_is_distances else distance_matrix(target)
    if distances.ndim != 2 or distances.shape[0] != distances.shape[1] or distances.shape[0] < 2:
        raise errors.LossInputError(f"fit_relative_embedding: invalid target distance shape {distances.shape}")
    pair_indices = np.array(list(itertools.combinations(range(distances.shape[0]), 2)), dtype=np.int64)
    target_distances = core.Tensor(distances[pair_indices[:, 0], pair_indices[:, 1]])
    scale = float(target_distances.data.mean()) or 1.0
    rng = np.random.default_rng(seed)
    best_fit = None
    for restart in range(1, restarts + 1):
        initial_points = rng.normal(0, scale / np.sqrt(2 * dim), size=(distances.shape[0], dim))
        with core.no_tape():
            start_loss = _relative_loss(core.Tensor(initial_points), target_distances, pair_indices).item()
        points, loss, used_steps = _fit_once(initial_points, target_distances, pair_indices, steps,
                                             lr * scale, patience)
        logger.debug(f"Restart {restart}: loss {start_loss} -> {loss} in {used_steps} steps")
        if best_fit is None or loss < best_fit.loss:
            best_fit = RelativeEmbeddingFit(np.array(points), loss, start_loss, used_steps, restart)
        if best_fit.loss <= tolerance * best_fit.initial_loss:
            break
    return best_fit
