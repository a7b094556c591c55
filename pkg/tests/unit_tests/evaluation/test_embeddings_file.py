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
import os
import struct

import numpy as np
import pytest

import embedding_distillation.enums as enums
import embedding_distillation.errors as errors
import embedding_distillation.evaluation as evaluation
import embedding_distillation.model as model
import tests.test_utils.builders as builders


def test_file_layout(tmp_path):
    path = os.path.join(tmp_path, "embeddings.bin")
    embeddings = np.array([[1.0, -2.0], [0.5, 3.25], [7.0, 0.0]])
    evaluation.write_embeddings(path, embeddings, [4, 4, 9])
    with open(path, "rb") as embeddings_file:
        content = embeddings_file.read()
    assert content[:4] == b"MDEB"
    assert struct.unpack_from("<IQQ", content, 4) == (1, 3, 2)
    assert len(content) == 24 + 3 * (4 + 2 * 8)
    assert struct.unpack_from("<Idd", content, 24) == (4, 1.0, -2.0)
    loaded, labels = evaluation.load_embeddings(path)
    np.testing.assert_array_equal(loaded, embeddings)
    np.testing.assert_array_equal(labels, [4, 4, 9])


def test_invalid_files(tmp_path):
    path = os.path.join(tmp_path, "embeddings.bin")
    with pytest.raises(errors.EmbeddingFileError):
        evaluation.load_embeddings(path)
    with pytest.raises(errors.EmbeddingFileError):
        evaluation.write_embeddings(path, np.ones((2, 2)), [0, -1])
    with pytest.raises(errors.EmbeddingFileError):
        evaluation.write_embeddings(path, np.ones((2, 2)), [0])
    evaluation.write_embeddings(path, np.ones((2, 2)), [0, 1])
    with open(path, "rb") as embeddings_file:
        content = embeddings_file.read()
    for corrupted in (content[:10], content[:-1], b"XXXX" + content[4:]):
        with open(path, "wb") as embeddings_file:
            embeddings_file.write(corrupted)
        with pytest.raises(errors.EmbeddingFileError):
            evaluation.load_embeddings(path)


def test_export_embeddings(tmp_path):
    dataset = builders.small_vector_dataset()
    net = model.init_params(builders.small_student_config(), 0)
    path = os.path.join(tmp_path, "test.bin")
    assert evaluation.export_embeddings(net, dataset, enums.DatasetPartition.TEST, path) == 24
    embeddings, labels = evaluation.load_embeddings(path)
    test_indices = dataset.partition(enums.DatasetPartition.TEST)
    np.testing.assert_array_equal(labels, dataset.labels[test_indices])
    np.testing.assert_allclose(embeddings, model.embed_array(net, dataset.inputs[test_indices]))
