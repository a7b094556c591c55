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

import numpy as np
import pytest

import embedding_distillation.errors as errors
import embedding_distillation.data as data
import tests.test_utils.builders as builders


def _write(tmp_path, content):
    path = os.path.join(tmp_path, "dataset.csv")
    with open(path, "w", encoding="utf-8") as csv_file:
        csv_file.write(content)
    return path


def test_load_fixture():
    dataset = data.load_csv_dataset(builders.SMALL_DATASET_FILE)
    assert dataset.inputs.shape == (9, 4)
    np.testing.assert_array_equal(dataset.labels, np.repeat(np.arange(3), 3))
    assert dataset.name == "small_dataset"


def test_export_then_load_is_exact(tmp_path):
    dataset = data.gen_synthetic_clusters(4, 3, 5, seed=2)
    path = os.path.join(tmp_path, "exported.csv")
    data.export_csv_dataset(dataset, path)
    loaded = data.load_csv_dataset(path)
    assert loaded.inputs.tobytes() == dataset.inputs.tobytes()
    np.testing.assert_array_equal(loaded.labels, dataset.labels)


def test_format_errors_name_the_line(tmp_path):
    with pytest.raises(errors.DatasetFormatError, match=":3:"):
        data.load_csv_dataset(_write(tmp_path, "0,1.0,2.0\n0,1.0,2.0\n1,1.0\n1,2.0,3.0\n"))
    with pytest.raises(errors.DatasetFormatError, match=":2:"):
        data.load_csv_dataset(_write(tmp_path, "0,1.0\n0,abc\n"))
    with pytest.raises(errors.DatasetFormatError, match="single sample"):
        data.load_csv_dataset(_write(tmp_path, "0,1.0\n0,2.0\n1,3.0\n"))
    with pytest.raises(errors.DatasetFormatError):
        data.load_csv_dataset(_write(tmp_path, "# header only\n"))


def test_grids_are_not_exported(tmp_path):
    with pytest.raises(errors.DatasetFormatError):
        data.export_csv_dataset(data.gen_synthetic_grids(4, 2, 2, 2), os.path.join(tmp_path, "grid.csv"))


def test_non_finite_features_name_the_line(tmp_path):
    with pytest.raises(errors.DatasetFormatError, match=":2: non finite"):
        data.load_csv_dataset(_write(tmp_path, "0,1.0,2.0\n0,nan,2.0\n1,1.0,2.0\n1,2.0,3.0\n"))
    with pytest.raises(errors.DatasetFormatError, match=":4: non finite"):
        data.load_csv_dataset(_write(tmp_path, "# label,features\n0,1.0\n0,2.0\n1,-inf\n1,3.0\n"))


def test_unreadable_files(tmp_path):
    with pytest.raises(errors.DatasetError, match="missing.csv"):
        data.load_csv_dataset(os.path.join(tmp_path, "missing.csv"))
    path = os.path.join(tmp_path, "latin1.csv")
    with open(path, "wb") as csv_file:
        csv_file.write("0,1.0\n0,2.0\n\xe9".encode("latin-1"))
    with pytest.raises(errors.DatasetFormatError, match="UTF-8"):
        data.load_csv_dataset(path)
    with pytest.raises(errors.OutputFileError):
        data.export_csv_dataset(data.gen_synthetic_clusters(2, 2, 2), os.path.join(tmp_path, "missing", "out.csv"))
