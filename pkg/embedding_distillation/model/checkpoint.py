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
import hashlib
import io
import math
import struct

import numpy as np

import embedding_distillation.constants as constants
import embedding_distillation.errors as errors
import embedding_distillation.model.net_config as net_config
import embedding_distillation.model.embedding_net as embedding_net

_U32 = struct.Struct("<I")
_U64 = struct.Struct("<Q")
_F64_SIZE = 8


def checkpoint_bytes(net: embedding_net.EmbeddingNet) -> bytes:
    """
    MDCK layout: magic, u32 version, u32 length + config text,
    then per parameter: u32 name length, name, u32 rank, u64 dims, little-endian f64 payload
    """
    config_text = "\n".join(net.config.to_lines()).encode("utf-8")
    buffer = io.BytesIO()
    buffer.write(constants.CHECKPOINT_MAGIC)
    buffer.write(_U32.pack(constants.CHECKPOINT_VERSION))
    buffer.write(_U32.pack(len(config_text)))
    buffer.write(config_text)
    for name, value in net.params.items():
        encoded_name = name.encode("utf-8")
        buffer.write(_U32.pack(len(encoded_name)))
        buffer.write(encoded_name)
        buffer.write(_U32.pack(value.ndim))
        for dim in value.shape:
            buffer.write(_U64.pack(dim))
        buffer.write(value.data.astype("<f8").tobytes(order="C"))
    return buffer.getvalue()


def save_checkpoint(net: embedding_net.EmbeddingNet, path):
    try:
        with open(path, "wb") as checkpoint_file:
            checkpoint_file.write(checkpoint_bytes(net))
    except OSError as err:
        raise errors.CheckpointError(f"{path}: cannot write the checkpoint ({err.strerror or err})") from err


class _Reader:
    def __init__(self, content: bytes, path):
        self.content = content
        self.path = path
        self.offset = 0

    def at_end(self) -> bool:
        return self.offset >= len(self.content)

    def read(self, size, what) -> bytes:
        available = len(self.content) - self.offset
        if available < size:
            raise errors.CorruptedCheckpointError(
                f"{self.path}: truncated {what}, expected {size} bytes but only {available} remain"
            )
        chunk = self.content[self.offset:self.offset + size]
        self.offset += size
        return chunk

    def read_u32(self, what) -> int:
        return _U32.unpack(self.read(_U32.size, what))[0]

    def read_u64(self, what) -> int:
        return _U64.unpack(self.read(_U64.size, what))[0]


def checkpoint_from_bytes(content: bytes, path="<memory>", expected_config=None) -> embedding_net.EmbeddingNet:
    reader = _Reader(content, path)
    magic = reader.read(len(constants.CHECKPOINT_MAGIC), "magic")
    if magic != constants.CHECKPOINT_MAGIC:
        raise errors.CorruptedCheckpointError(f"{path}: not a checkpoint file (magic {magic!r})")
    version = reader.read_u32("version")
    if version != constants.CHECKPOINT_VERSION:
        raise errors.CheckpointVersionError(
            f"{path}: unsupported checkpoint version {version}, expected {constants.CHECKPOINT_VERSION}"
        )
    config_text = reader.read(reader.read_u32("config length"), "config text")
    try:
        config = net_config.NetConfig.from_lines(config_text.decode("utf-8").splitlines())
    except (UnicodeDecodeError, errors.NetConfigError) as err:
        raise errors.CorruptedCheckpointError(f"{path}: invalid config section: {err}") from err
    params = {}
    while not reader.at_end():
        name = reader.read(reader.read_u32("parameter name length"), "parameter name").decode("utf-8")
        rank = reader.read_u32(f"{name} rank")
        shape = tuple(reader.read_u64(f"{name} shape") for _ in range(rank))
        if name in params:
            raise errors.CorruptedCheckpointError(f"{path}: parameter {name} is stored twice")
        payload = reader.read(math.prod(shape) * _F64_SIZE, f"{name} payload")
        params[name] = np.frombuffer(payload, dtype="<f8").astype(np.float64).reshape(shape)
    missing = sorted(set(config.parameter_shapes()) - set(params))
    if missing:
        raise errors.MissingParameterError(f"{path}: missing parameters {missing}")
    unexpected = sorted(set(params) - set(config.parameter_shapes()))
    if unexpected:
        raise errors.CorruptedCheckpointError(f"{path}: parameters {unexpected} are not in the config")
    try:
        net = embedding_net.EmbeddingNet(config, params)
    except errors.NetConfigError as err:
        raise errors.CorruptedCheckpointError(f"{path}: {err}") from err
    if expected_config is not None and expected_config != config:
        raise errors.CheckpointConfigMismatchError(
            f"{path}: checkpoint config differs from the expected one", config
        )
    return net


def load_checkpoint(path, expected_config=None) -> embedding_net.EmbeddingNet:
    """
    :param expected_config: when given, a checkpoint with another config raises CheckpointConfigMismatchError
    carrying the loaded config
    """
    try:
        with open(path, "rb") as checkpoint_file:
            content = checkpoint_file.read()
    except OSError as err:
        raise errors.CheckpointError(f"{path}: {err.strerror or err}") from err
    return checkpoint_from_bytes(content, path=path, expected_config=expected_config)


def params_digest(net: embedding_net.EmbeddingNet) -> str:
    return hashlib.sha256(checkpoint_bytes(net)).hexdigest()
