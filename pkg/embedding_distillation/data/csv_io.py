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
import collections
import csv
import math
import os

import numpy as np

import embedding_distillation.constants as constants
import embedding_distillation.enums as enums
import embedding_distillation.errors as errors
import embedding_distillation.data.dataset as dataset_module


def _read_rows(path, labels, rows, line_numbers):
    feature_count = None
    with open(path, newline="", encoding="utf-8") as csv_file:
        for line_number, row in enumerate(csv.reader(csv_file, delimiter=constants.CSV_SEPARATOR), start=1):
            if not row or (line_number == 1 and row[0].startswith(constants.CSV_HEADER_PREFIX)):
                continue
            if len(row) < 2:
                raise errors.DatasetFormatError(f"{path}:{line_number}: expected a label and features")
            if feature_count is None:
                feature_count = len(row) - 1
            elif len(row) - 1 != feature_count:
                raise errors.DatasetFormatError(
                    f"{path}:{line_number}: ragged row with {len(row) - 1} features, expected {feature_count}"
                )
            try:
                label = int(row[0])
                features = [float(value) for value in row[1:]]
            except ValueError as err:
                raise errors.DatasetFormatError(f"{path}:{line_number}: non numeric field ({err})") from err
            if not all(math.isfinite(value) for value in features):
                raise errors.DatasetFormatError(f"{path}:{line_number}: non finite feature value")
            labels.append(label)
            rows.append(features)
            line_numbers[label].append(line_number)


def load_csv_dataset(path, name=None) -> dataset_module.Dataset:
    """
    One sample per line: integer label then a fixed count of finite float features.
    An optional first line starting with '#' is a header.
    """
    labels, rows, line_numbers = [], [], collections.defaultdict(list)
    try:
        _read_rows(path, labels, rows, line_numbers)
    except OSError as err:
        raise errors.DatasetError(f"{path}: cannot read the dataset ({err.strerror or err})") from err
    except (UnicodeDecodeError, csv.Error) as err:
        raise errors.DatasetFormatError(f"{path}: not a UTF-8 CSV file ({err})") from err
    if not rows:
        raise errors.DatasetFormatError(f"{path}: no sample")
    for label, lines in line_numbers.items():
        if len(lines) < 2:
            raise errors.DatasetFormatError(
                f"{path}:{lines[0]}: class {label} has a single sample, retrieval needs at least 2"
            )
    return dataset_module.Dataset(
        np.array(rows, dtype=np.float64),
        np.array(labels, dtype=np.int64),
        name or os.path.splitext(os.path.basename(path))[0],
    )


def export_csv_dataset(dataset: dataset_module.Dataset, path):
    """
    repr() floats round-trip exactly through load_csv_dataset
    """
    if dataset.input_kind is not enums.InputKind.VECTOR:
        raise errors.DatasetFormatError(f"{dataset.name}: only vector datasets can be exported as CSV")
    try:
        with open(path, "w", newline="", encoding="utf-8") as csv_file:
            writer = csv.writer(csv_file, delimiter=constants.CSV_SEPARATOR)
            csv_file.write(f"{constants.CSV_HEADER_PREFIX} label,{dataset.inputs.shape[1]} features\n")
            for label, features in zip(dataset.labels, dataset.inputs):
                writer.writerow([int(label)] + [repr(float(value)) for value in features])
    except OSError as err:
        raise errors.OutputFileError(f"{path}: cannot write the dataset ({err.strerror or err})") from err
