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

import embedding_distillation.constants as constants
import embedding_distillation.core.tape as tape_module
import embedding_distillation.core.tensor as tensor


@dataclasses.dataclass
class GradientCheckResult:
    max_relative_error: float
    worst_coordinate: typing.Optional[tuple] = None
    non_finite_coordinate: typing.Optional[tuple] = None

    def passed(self, tolerance=constants.GRAD_CHECK_TOLERANCE) -> bool:
        return self.non_finite_coordinate is None and self.max_relative_error < tolerance

    def __float__(self):
        return float(self.max_relative_error)


def _evaluate(function, values) -> float:
    with tape_module.no_tape():
        return function(tensor.Tensor(values)).item()


def grad_check(function, point, eps=constants.GRAD_CHECK_EPSILON) -> GradientCheckResult:
    """
    Compares the tape gradient of the scalar function at point with central differences.
    :param function: takes a Tensor and returns a single value Tensor
    :return: the max over coordinates of |analytic - numeric| / max(1e-8, |analytic| + |numeric|)
    """
    values = point.numpy() if isinstance(point, tensor.Tensor) else np.array(point, dtype=np.float64)
    with tape_module.Tape() as tape:
        watched = tape.watch(values)
        output = function(watched)
    if not np.all(np.isfinite(output.data)):
        return GradientCheckResult(float("inf"), non_finite_coordinate=())
    if tape.is_recorded(output):
        analytic = tape_module.backward(tape, output)[watched.node_id].data
    else:
        # output does not depend on the point
        analytic = np.zeros(values.shape, dtype=np.float64)
    result = GradientCheckResult(0.0)
    for coordinate in np.ndindex(values.shape):
        shifted = values.copy()
        shifted[coordinate] = values[coordinate] + eps
        upper = _evaluate(function, shifted)
        shifted[coordinate] = values[coordinate] - eps
        lower = _evaluate(function, shifted)
        numeric = (upper - lower) / (2 * eps)
        if not (np.isfinite(numeric) and np.isfinite(analytic[coordinate])):
            return GradientCheckResult(float("inf"), worst_coordinate=coordinate, non_finite_coordinate=coordinate)
        error = abs(analytic[coordinate] - numeric) / max(
            constants.GRAD_CHECK_DENOMINATOR_FLOOR, abs(analytic[coordinate]) + abs(numeric)
        )
        if error > result.max_relative_error or result.worst_coordinate is None:
            result.max_relative_error = float(error)
            result.worst_coordinate = coordinate
    return result


def nudge_from_kinks(values, nudge=constants.RELU_KINK_NUDGE) -> np.ndarray:
    """
    Moves coordinates closer than nudge to 0 away from it, keeping their sign
    """
    values = np.array(values, dtype=np.float64)
    close = np.abs(values) < nudge
    values[close] = np.where(values[close] < 0, -nudge, nudge)
    return values
