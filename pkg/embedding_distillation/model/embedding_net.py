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

import numpy as np

import embedding_distillation.constants as constants
import embedding_distillation.enums as enums
import embedding_distillation.errors as errors
import embedding_distillation.core as core
import embedding_distillation.model.net_config as net_config


@dataclasses.dataclass(frozen=True)
class TapOutput:
    name: str
    # (batch, *per_sample_shape)
    activation: core.Tensor


class EmbeddingNet:
    def __init__(self, config: net_config.NetConfig, params: dict):
        self.config = config
        expected_shapes = config.parameter_shapes()
        missing = sorted(set(expected_shapes) - set(params))
        if missing:
            raise errors.MissingParameterError(f"missing parameters: {missing}")
        for name, shape in expected_shapes.items():
            if tuple(params[name].shape) != shape:
                raise errors.NetConfigError(
                    f"parameter {name} has shape {tuple(params[name].shape)}, expected {shape}"
                )
        self.params = {
            name: params[name] if isinstance(params[name], core.Tensor) else core.Tensor(params[name])
            for name in expected_shapes
        }

    @property
    def tap_names(self) -> tuple:
        return self.config.taps

    def bind(self, tape: core.Tape) -> dict:
        """
        :return: the parameters watched on tape, in parameter order
        """
        return {name: tape.watch(value) for name, value in self.params.items()}

    def with_params(self, params: dict):
        return EmbeddingNet(self.config, params)

    def parameter_arrays(self) -> dict:
        return {name: value.data for name, value in self.params.items()}

    def __repr__(self):
        return f"EmbeddingNet(layers={self.config.layer_names}, parameters={count_parameters(self)})"


def init_params(config: net_config.NetConfig, seed: int) -> EmbeddingNet:
    """
    Weights are drawn uniformly in [-1/sqrt(fan_in), 1/sqrt(fan_in)], biases are zero
    """
    rng = np.random.default_rng(seed)
    params = {}
    for layer, fan_in in zip(config.layers, config.layer_input_sizes()):
        if layer.kind is enums.LayerKind.GLOBAL_AVERAGE_POOL:
            continue
        weight_shape = config.parameter_shapes()[net_config.weight_name(layer.name)]
        bound = 1 / math.sqrt(fan_in)
        params[net_config.weight_name(layer.name)] = rng.uniform(-bound, bound, size=weight_shape)
        params[net_config.bias_name(layer.name)] = np.zeros(layer.size, dtype=np.float64)
    return EmbeddingNet(config, params)


def _check_batch(config, batch):
    if batch.ndim != len(config.sample_shape) + 1 or batch.shape[1:] != config.sample_shape:
        raise errors.TensorShapeError(
            f"embed: expected a batch of {config.input_kind.value} samples of shape {config.sample_shape}, "
            f"got batch shape {batch.shape}"
        )


def _apply_layer(layer, params, activation):
    if layer.kind is enums.LayerKind.AFFINE:
        if activation.ndim > 2:
            activation = activation.reshape((activation.shape[0], -1))
        return activation @ params[net_config.weight_name(layer.name)] + params[net_config.bias_name(layer.name)]
    if layer.kind is enums.LayerKind.CONV:
        convolved = core.conv2d(activation, params[net_config.weight_name(layer.name)], stride=layer.stride)
        return convolved + params[net_config.bias_name(layer.name)].reshape((1, layer.size, 1, 1))
    return activation.mean(axis=(2, 3))


def embed(net: EmbeddingNet, batch, params: typing.Optional[dict] = None) -> tuple:
    """
    Runs the forward pass on a (batch, *sample_shape) input.
    :param params: parameters to use instead of net.params, usually the ones returned by net.bind(tape)
    :return: (embeddings of shape (batch, embedding_dim), list of TapOutput in net.tap_names order)
    """
    params = net.params if params is None else params
    activation = batch if isinstance(batch, core.Tensor) else core.Tensor(batch)
    _check_batch(net.config, activation)
    last_index = len(net.config.layers) - 1
    taps_by_name = {}
    for index, layer in enumerate(net.config.layers):
        activation = _apply_layer(layer, params, activation)
        if index < last_index and layer.kind is not enums.LayerKind.GLOBAL_AVERAGE_POOL:
            activation = activation.relu()
        if layer.name in net.tap_names:
            taps_by_name[layer.name] = TapOutput(layer.name, activation)
    if net.config.normalize_embeddings:
        norms = activation.l2_norm(axis=-1, eps=constants.DISTANCE_EPSILON, keepdims=True)
        activation = activation / (norms + constants.DISTANCE_EPSILON)
    return activation, [taps_by_name[name] for name in net.tap_names]


def embed_array(net: EmbeddingNet, samples, chunk_size=constants.EMBED_CHUNK_SIZE) -> np.ndarray:
    """
    Embeds samples chunk by chunk without recording anything
    """
    samples = np.asarray(samples, dtype=np.float64)
    chunks = []
    with core.no_tape():
        for start in range(0, len(samples), chunk_size):
            embeddings, _ = embed(net, samples[start:start + chunk_size])
            chunks.append(embeddings.data)
    if not chunks:
        return np.zeros((0, net.config.embedding_dim), dtype=np.float64)
    return np.concatenate(chunks, axis=0)


def count_parameters(net: EmbeddingNet) -> int:
    return sum(value.size for value in net.params.values())
