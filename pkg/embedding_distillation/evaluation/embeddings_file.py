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
import struct

import numpy as np

import embedding_distillation.constants as constants
import embedding_distillation.enums as enums
import embedding_distillation.errors as errors
import embedding_distillation.model as model

# magic, u32 version, u64 N, u64 D
_HEADER = struct.Struct("<4sIQQ")


def _row_dtype(dimension):
    return np.dtype([("label", "<u4"), ("embedding", "<f8", (dimension,))])


def write_embeddings(path, embeddings, labels):
    embeddings = np.asarray(embeddings, dtype=np.float64)
    labels = np.asarray(labels)
    if embeddings.ndim != 2 or embeddings.shape[0] == 0 or len(labels) != embeddings.shape[0]:
        raise errors.EmbeddingFileError(
            f"{path}: expected a non empty (N, D) embedding matrix with N labels, got {embeddings.shape} "
            f"and {len(labels)} labels"
        )
    if np.any(labels < 0):
        raise errors.EmbeddingFileError(f"{path}: labels must be non negative to be stored as u32")
    rows = np.empty(embeddings.shape[0], dtype=_row_dtype(embeddings.shape[1]))
    rows["label"] = labels
    rows["embedding"] = embeddings
    try:
        with open(path, "wb") as embeddings_file:
            embeddings_file.write(_HEADER.pack(
                constants.EMBEDDINGS_MAGIC, constants.EMBEDDINGS_VERSION, embeddings.shape[0], embeddings.shape[1]
            ))
            embeddings_file.write(rows.tobytes())
    except OSError as err:
        raise errors.EmbeddingFileError(f"{path}: {err}") from err


def load_embeddings(path) -> tuple:
    """
    :return: (embeddings (N, D), labels (N,))
    """
    try:
        with open(path, "rb") as embeddings_file:
            content = embeddings_file.read()
    except OSError as err:
        raise errors.EmbeddingFileError(f"{path}: {err}") from err
    if len(content) < _HEADER.size:
        raise errors.EmbeddingFileError(f"{path}: truncated header ({len(content)} bytes)")
    magic, version, count, dimension = _HEADER.unpack_from(content)
    if magic != constants.EMBEDDINGS_MAGIC:
        raise errors.EmbeddingFileError(f"{path}: not an embeddings file (magic {magic!r})")
    if version != constants.EMBEDDINGS_VERSION:
        raise errors.EmbeddingFileError(
            f"{path}: unsupported version {version}, expected {constants.EMBEDDINGS_VERSION}"
        )
    row_dtype = _row_dtype(dimension)
    expected_size = count * row_dtype.itemsize
    if len(content) - _HEADER.size != expected_size:
        raise errors.EmbeddingFileError(
            f"{path}: header announces {count}x{dimension} embeddings ({expected_size} bytes), "
            f"payload holds {len(content) - _HEADER.size} bytes"
        )
    rows = np.frombuffer(content, dtype=row_dtype, offset=_HEADER.size)
    return rows["embedding"].astype(np.float64), rows["label"].astype(np.int64)


def export_embeddings(net, dataset, partition: enums.DatasetPartition, path) -> int:
    """
    Embeds the given split of dataset and writes it to path
    :return: the number of exported rows
    """
    indices = dataset.partition(partition)
    if len(indices) == 0:
        raise errors.EmbeddingFileError(f"{path}: {partition.value} split of {dataset.name} is empty")
    embeddings = model.embed_array(net, dataset.inputs[indices])
    write_embeddings(path, embeddings, dataset.labels[indices])
    return len(indices)
