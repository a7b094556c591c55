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

import numpy as np

import embedding_distillation.constants as constants
import embedding_distillation.errors as errors
import embedding_distillation.core as core


@dataclasses.dataclass(frozen=True)
class OptimizerState:
    first_moments: dict
    second_moments: dict
    step: int = 0

    @classmethod
    def zeros_like(cls, params: dict):
        return cls(
            {name: np.zeros(np.shape(_as_array(value))) for name, value in params.items()},
            {name: np.zeros(np.shape(_as_array(value))) for name, value in params.items()},
        )


def _as_array(value) -> np.ndarray:
    return value.data if isinstance(value, core.Tensor) else np.asarray(value)


def adam_step(params: dict, grads: dict, state: OptimizerState, lr=constants.DEFAULT_LEARNING_RATE,
              beta1=constants.DEFAULT_ADAM_BETA1, beta2=constants.DEFAULT_ADAM_BETA2,
              eps=constants.DEFAULT_ADAM_EPS) -> tuple:
    """
    Bias corrected Adam update, inputs are left untouched.
    :return: (new parameter arrays by name, new OptimizerState)
    """
    step = state.step + 1
    for name in params:
        gradient = _as_array(grads[name])
        if gradient.shape != np.shape(_as_array(params[name])):
            raise errors.GradientError(
                f"gradient of {name} has shape {gradient.shape}, expected {np.shape(_as_array(params[name]))}"
            )
        if not np.all(np.isfinite(gradient)):
            raise errors.NonFiniteGradientError(step, name)
    new_params, first_moments, second_moments = {}, {}, {}
    for name, value in params.items():
        gradient = _as_array(grads[name])
        first_moments[name] = beta1 * state.first_moments[name] + (1 - beta1) * gradient
        second_moments[name] = beta2 * state.second_moments[name] + (1 - beta2) * np.square(gradient)
        corrected_first = first_moments[name] / (1 - beta1 ** step)
        corrected_second = second_moments[name] / (1 - beta2 ** step)
        new_params[name] = _as_array(value) - lr * corrected_first / (np.sqrt(corrected_second) + eps)
    return new_params, OptimizerState(first_moments, second_moments, step)
