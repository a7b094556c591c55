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
import json
import typing

import numpy as np

import octobot_commons.logging as logging

import embedding_distillation.constants as constants
import embedding_distillation.core as core
import embedding_distillation.model as model
import embedding_distillation.loss as loss
import embedding_distillation.sampling as sampling

GRADIENT_SUITE_LOGGER_NAME = "GradientSuite"


@dataclasses.dataclass(frozen=True)
class GradientCase:
    name: str
    # rng -> (scalar function of one Tensor, point)
    factory: typing.Callable


@dataclasses.dataclass(frozen=True)
class GradientSuiteRow:
    NAME_KEY = "name"
    MAX_RELATIVE_ERROR_KEY = "max_relative_error"
    PASSED_KEY = "passed"

    name: str
    max_relative_error: float
    passed: bool

    def to_line(self) -> str:
        return json.dumps({
            self.NAME_KEY: self.name,
            self.MAX_RELATIVE_ERROR_KEY: self.max_relative_error,
            self.PASSED_KEY: self.passed,
        })


def _projected(function, output_shape, rng):
    # random projection turning a tensor valued function into a scalar one
    projection = core.Tensor(rng.normal(size=output_shape))
    return lambda value: (function(value) * projection).sum()


def _unary(primitive, shape, point_transform=None):
    def factory(rng):
        point = rng.normal(size=shape)
        if point_transform is not None:
            point = point_transform(point)
        with core.no_tape():
            output_shape = primitive(core.Tensor(point)).shape
        return _projected(primitive, output_shape, rng), point
    return factory


def _binary(primitive, left_shape, right_shape, right_transform=None):
    def factory(rng):
        right = rng.normal(size=right_shape)
        if right_transform is not None:
            right = right_transform(right)
        right = core.Tensor(right)
        with core.no_tape():
            output_shape = primitive(core.Tensor(np.ones(left_shape)), right).shape
        return _projected(lambda value: primitive(value, right), output_shape, rng), rng.normal(size=left_shape)
    return factory


def _away_from_zero(values):
    return np.sign(values) * (np.abs(values) + 0.5)


def _embeddings_case(loss_function, batch_size=6, dim=4):
    def factory(rng):
        teacher = core.Tensor(rng.normal(size=(batch_size, dim)))
        return (lambda student: loss_function(student, teacher)), rng.normal(size=(batch_size, dim))
    return factory


def _triplet_case(rng):
    labels = np.repeat(np.arange(3), 2)
    embeddings = rng.normal(size=(len(labels), 4))
    triplets = sampling.mine_hard_negatives(embeddings, labels)
    # large margin: every hinge is active and away from its kink
    return (lambda value: loss.batch_triplet_loss(value, triplets, margin=10.0)), embeddings


def _hint_case(rng):
    teacher_tap = model.TapOutput("teacher", core.Tensor(rng.normal(size=(4, 2, 3, 3))))
    return (
        lambda value: loss.hint_loss([(model.TapOutput("student", value), teacher_tap)])
    ), rng.normal(size=(4, 2, 3, 3))


def _attention_case(rng):
    teacher_tap = model.TapOutput("teacher", core.Tensor(rng.normal(size=(3, 4, 3, 3))))
    return (
        lambda value: loss.batch_attention_loss([(model.TapOutput("student", value), teacher_tap)])
    ), rng.normal(size=(3, 2, 3, 3))


def _net_case(net_config: model.NetConfig, parameter_name, batch_size=3):
    def factory(rng):
        net = model.init_params(net_config, int(rng.integers(1 << 31)))
        # non zero biases keep relu pre activations away from their kink at 0
        params = {
            name: value + rng.normal(scale=0.1, size=value.shape) if name.endswith(".bias") else value
            for name, value in net.parameter_arrays().items()
        }
        batch = rng.normal(size=(batch_size, *net_config.sample_shape))
        projection = core.Tensor(rng.normal(size=(batch_size, net_config.embedding_dim)))

        def function(value):
            embeddings, _ = model.embed(net, batch, {**params, parameter_name: value})
            return (embeddings * projection).sum()
        return function, params[parameter_name]
    return factory


def _gradient_check_nets() -> list:
    return [
        model.vector_net_config(5, (4, 3), 3, taps=("hidden_0",)),
        model.grid_net_config(4, 4, 2, (3, ), embedding_dim=3),
        model.NetConfig.from_dict({
            "input_kind": "grid",
            "input_shape": [5, 5, 1],
            "layers": [
                {"kind": "conv", "size": 2, "stride": 2, "name": "strided"},
                {"kind": "affine", "size": 3, "name": "embedding"},
            ],
            "embedding_dim": 3,
            "normalize_embeddings": True,
        }),
    ]


def default_cases() -> list:
    cases = [
        GradientCase("add", _binary(core.add, (3, 4), (4,))),
        GradientCase("subtract", _binary(core.subtract, (3, 4), (3, 1))),
        GradientCase("multiply", _binary(core.multiply, (3, 4), (3, 4))),
        GradientCase("divide", _binary(core.divide, (3, 4), (4,), _away_from_zero)),
        GradientCase("matmul", _binary(core.matmul, (3, 4), (4, 2))),
        GradientCase("relu", _unary(core.relu, (3, 4), core.nudge_from_kinks)),
        GradientCase("hinge", _unary(core.hinge, (3, 4), core.nudge_from_kinks)),
        GradientCase("square", _unary(core.square, (3, 4))),
        GradientCase("sqrt", _unary(core.sqrt, (3, 4), lambda values: np.abs(values) + 0.5)),
        GradientCase("absolute", _unary(core.absolute, (3, 4), core.nudge_from_kinks)),
        GradientCase("reduce_sum", _unary(lambda value: core.reduce_sum(value, axis=1), (3, 4))),
        GradientCase("reduce_mean", _unary(lambda value: core.reduce_mean(value, axis=0, keepdims=True), (3, 4))),
        GradientCase("l2_norm", _unary(
            lambda value: core.l2_norm(value, axis=-1, eps=constants.DISTANCE_EPSILON), (3, 4)
        )),
        GradientCase("broadcast_to", _unary(lambda value: core.broadcast_to(value, (2, 3, 4)), (3, 1))),
        GradientCase("reshape", _unary(lambda value: core.reshape(value, (4, 3)), (3, 4))),
        GradientCase("take_rows", _unary(lambda value: core.take_rows(value, np.array([2, 0, 2, 1])), (3, 4))),
        GradientCase("conv2d", _unary(
            lambda value: core.conv2d(value, core.Tensor(np.linspace(-1, 1, 2 * 3 * 9).reshape(2, 3, 3, 3))),
            (2, 3, 4, 4),
        )),
        GradientCase("conv2d_stride_2", _unary(
            lambda value: core.conv2d(value, core.Tensor(np.linspace(-1, 1, 2 * 1 * 9).reshape(2, 1, 3, 3)),
                                      stride=2),
            (2, 1, 5, 5),
        )),
        GradientCase("triplet_loss", _triplet_case),
        GradientCase("kd_abs_loss", _embeddings_case(loss.kd_abs_loss)),
        GradientCase("kd_rel_loss", _embeddings_case(
            lambda student, teacher: loss.kd_rel_loss(student, teacher, sampling.enumerate_pairs(6))
        )),
        GradientCase("kd_rel_loss_squared", _embeddings_case(
            lambda student, teacher: loss.kd_rel_loss(student, teacher, sampling.enumerate_pairs(6), squared=True)
        )),
        GradientCase("hint_loss", _hint_case),
        GradientCase("attention_loss", _attention_case),
    ]
    for net_config in _gradient_check_nets():
        net_name = "_".join(layer.kind.value for layer in net_config.layers)
        for parameter_name in net_config.parameter_shapes():
            cases.append(GradientCase(f"net[{net_name}].{parameter_name}", _net_case(net_config, parameter_name)))
    return cases


def run_gradient_suite(cases=None, points_per_case=constants.GRAD_CHECK_POINTS, seed=0,
                       tolerance=constants.GRAD_CHECK_TOLERANCE) -> list:
    """
    :return: one GradientSuiteRow per case, its error being the worst over points_per_case random points
    """
    logger = logging.get_logger(GRADIENT_SUITE_LOGGER_NAME)
    rng = np.random.default_rng(seed)
    rows = []
    for case in default_cases() if cases is None else cases:
        worst = 0.0
        for _ in range(points_per_case):
            function, point = case.factory(rng)
            result = core.grad_check(function, point)
            worst = max(worst, float(result))
            if not result.passed(tolerance):
                logger.error(f"{case.name}: relative error {float(result):.3e} at {result.worst_coordinate}")
                break
        rows.append(GradientSuiteRow(case.name, worst, worst < tolerance))
    return rows
