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

import embedding_distillation.constants as constants
import embedding_distillation.enums as enums
import embedding_distillation.errors as errors


@dataclasses.dataclass(frozen=True)
class LayerSpec:
    kind: enums.LayerKind
    size: int = 0
    stride: int = 1
    name: str = ""

    def to_line(self) -> str:
        return f"{self.kind.value},{self.size},{self.stride},{self.name}"

    @classmethod
    def from_line(cls, line: str):
        try:
            kind, size, stride, name = line.split(",")
            return cls(enums.LayerKind(kind), int(size), int(stride), name)
        except ValueError as err:
            raise errors.NetConfigError(f"invalid layer description '{line}': {err}") from err

    @classmethod
    def from_dict(cls, layer_dict, index):
        kind = enums.LayerKind(layer_dict[enums.NetConfigKeys.LAYER_KIND.value])
        return cls(
            kind,
            int(layer_dict.get(enums.NetConfigKeys.LAYER_SIZE.value, 0)),
            int(layer_dict.get(enums.NetConfigKeys.LAYER_STRIDE.value, 1)),
            layer_dict.get(enums.NetConfigKeys.LAYER_NAME.value, f"{kind.value}_{index}"),
        )

    def to_dict(self):
        return {
            enums.NetConfigKeys.LAYER_KIND.value: self.kind.value,
            enums.NetConfigKeys.LAYER_SIZE.value: self.size,
            enums.NetConfigKeys.LAYER_STRIDE.value: self.stride,
            enums.NetConfigKeys.LAYER_NAME.value: self.name,
        }


@dataclasses.dataclass(frozen=True)
class NetConfig:
    """
    input_shape is (dim,) for vectors and (height, width, channels) for grids.
    Grid samples themselves are stored channels first: (channels, height, width).
    The last layer is the affine embedding layer, it is not followed by a relu.
    """
    input_kind: enums.InputKind
    input_shape: tuple
    layers: tuple
    embedding_dim: int = constants.DEFAULT_EMBEDDING_DIM
    taps: tuple = ()
    normalize_embeddings: bool = False

    def __post_init__(self):
        object.__setattr__(self, "input_shape", tuple(int(dim) for dim in self.input_shape))
        object.__setattr__(self, "layers", tuple(self.layers))
        object.__setattr__(self, "taps", tuple(self.taps))
        self.validate()

    @property
    def sample_shape(self) -> tuple:
        if self.input_kind is enums.InputKind.GRID:
            height, width, channels = self.input_shape
            return channels, height, width
        return self.input_shape

    @property
    def layer_names(self) -> list:
        return [layer.name for layer in self.layers]

    def validate(self):
        expected_rank = 3 if self.input_kind is enums.InputKind.GRID else 1
        if len(self.input_shape) != expected_rank or any(dim <= 0 for dim in self.input_shape):
            raise errors.NetConfigError(
                f"{self.input_kind.value} input requires {expected_rank} positive dimensions, "
                f"got {self.input_shape}"
            )
        if self.embedding_dim <= 0:
            raise errors.NetConfigError(f"embedding_dim must be positive, got {self.embedding_dim}")
        if not self.layers:
            raise errors.NetConfigError("a network needs at least its embedding layer")
        names = self.layer_names
        if len(set(names)) != len(names) or any(not name for name in names):
            raise errors.NetConfigError(f"layer names must be unique and not empty, got {names}")
        last_layer = self.layers[-1]
        if last_layer.kind is not enums.LayerKind.AFFINE or last_layer.size != self.embedding_dim:
            raise errors.NetConfigError(
                f"final layer must be affine({self.embedding_dim}), got {last_layer.kind.value}({last_layer.size})"
            )
        for tap in self.taps:
            if tap not in names:
                raise errors.NetConfigError(f"tap '{tap}' is not a layer name, available layers: {names}")
        # raises on inconsistent chains
        self.layer_output_shapes()

    def layer_output_shapes(self) -> list:
        """
        :return: the per-sample output shape of every layer
        """
        shape = self.sample_shape
        shapes = []
        for index, layer in enumerate(self.layers):
            if layer.kind is enums.LayerKind.AFFINE:
                if layer.size <= 0:
                    raise errors.NetConfigError(f"layer {index} ({layer.name}): affine size must be positive")
                shape = (layer.size,)
            elif layer.kind is enums.LayerKind.CONV:
                if len(shape) != 3:
                    raise errors.NetConfigError(
                        f"layer {index} ({layer.name}): conv requires a grid input, got shape {shape}"
                    )
                if layer.size <= 0 or layer.stride not in constants.ALLOWED_CONV_STRIDES:
                    raise errors.NetConfigError(
                        f"layer {index} ({layer.name}): conv requires a positive channel count and a stride in "
                        f"{constants.ALLOWED_CONV_STRIDES}, got {layer.size} and {layer.stride}"
                    )
                shape = (layer.size, math.ceil(shape[1] / layer.stride), math.ceil(shape[2] / layer.stride))
            elif layer.kind is enums.LayerKind.GLOBAL_AVERAGE_POOL:
                if len(shape) != 3:
                    raise errors.NetConfigError(
                        f"layer {index} ({layer.name}): global average pool requires a grid input, got shape {shape}"
                    )
                shape = (shape[0],)
            shapes.append(shape)
        return shapes

    def layer_input_sizes(self) -> list:
        """
        :return: the fan in of every layer (0 for parameter-less layers)
        """
        sizes = []
        shape = self.sample_shape
        for layer, output_shape in zip(self.layers, self.layer_output_shapes()):
            if layer.kind is enums.LayerKind.AFFINE:
                sizes.append(math.prod(shape))
            elif layer.kind is enums.LayerKind.CONV:
                sizes.append(shape[0] * constants.CONV_KERNEL_SIZE * constants.CONV_KERNEL_SIZE)
            else:
                sizes.append(0)
            shape = output_shape
        return sizes

    def parameter_shapes(self) -> dict:
        shapes = {}
        shape = self.sample_shape
        for layer, output_shape in zip(self.layers, self.layer_output_shapes()):
            if layer.kind is enums.LayerKind.AFFINE:
                shapes[weight_name(layer.name)] = (math.prod(shape), layer.size)
                shapes[bias_name(layer.name)] = (layer.size,)
            elif layer.kind is enums.LayerKind.CONV:
                shapes[weight_name(layer.name)] = (
                    layer.size, shape[0], constants.CONV_KERNEL_SIZE, constants.CONV_KERNEL_SIZE
                )
                shapes[bias_name(layer.name)] = (layer.size,)
            shape = output_shape
        return shapes

    def to_lines(self) -> list:
        lines = [
            f"input_kind={self.input_kind.value}",
            f"input_shape={','.join(str(dim) for dim in self.input_shape)}",
            f"embedding_dim={self.embedding_dim}",
            f"normalize={str(self.normalize_embeddings).lower()}",
        ]
        lines += [f"layer.{index}={layer.to_line()}" for index, layer in enumerate(self.layers)]
        lines.append(f"taps={','.join(self.taps)}")
        return lines

    @classmethod
    def from_lines(cls, lines):
        values = {}
        layers = {}
        for line in lines:
            if not line.strip():
                continue
            key, separator, value = line.partition("=")
            if not separator:
                raise errors.NetConfigError(f"invalid config line: '{line}'")
            if key.startswith("layer."):
                layers[int(key.split(".", 1)[1])] = LayerSpec.from_line(value)
            else:
                values[key] = value
        try:
            return cls(
                enums.InputKind(values["input_kind"]),
                tuple(int(dim) for dim in values["input_shape"].split(",")),
                tuple(layers[index] for index in sorted(layers)),
                int(values["embedding_dim"]),
                tuple(tap for tap in values.get("taps", "").split(",") if tap),
                values.get("normalize", "false") == "true",
            )
        except (KeyError, ValueError) as err:
            raise errors.NetConfigError(f"incomplete or invalid config text: {err}") from err

    @classmethod
    def from_dict(cls, config_dict):
        try:
            return cls(
                enums.InputKind(config_dict[enums.NetConfigKeys.INPUT_KIND.value]),
                tuple(config_dict[enums.NetConfigKeys.INPUT_SHAPE.value]),
                tuple(
                    LayerSpec.from_dict(layer, index)
                    for index, layer in enumerate(config_dict[enums.NetConfigKeys.LAYERS.value])
                ),
                int(config_dict.get(enums.NetConfigKeys.EMBEDDING_DIM.value, constants.DEFAULT_EMBEDDING_DIM)),
                tuple(config_dict.get(enums.NetConfigKeys.TAPS.value, ())),
                bool(config_dict.get(enums.NetConfigKeys.NORMALIZE_EMBEDDINGS.value, False)),
            )
        except KeyError as err:
            raise errors.NetConfigError(f"missing field {err}") from err
        except ValueError as err:
            raise errors.NetConfigError(str(err)) from err

    def to_dict(self):
        return {
            enums.NetConfigKeys.INPUT_KIND.value: self.input_kind.value,
            enums.NetConfigKeys.INPUT_SHAPE.value: list(self.input_shape),
            enums.NetConfigKeys.LAYERS.value: [layer.to_dict() for layer in self.layers],
            enums.NetConfigKeys.EMBEDDING_DIM.value: self.embedding_dim,
            enums.NetConfigKeys.TAPS.value: list(self.taps),
            enums.NetConfigKeys.NORMALIZE_EMBEDDINGS.value: self.normalize_embeddings,
        }


def weight_name(layer_name) -> str:
    return f"{layer_name}.weight"


def bias_name(layer_name) -> str:
    return f"{layer_name}.bias"
