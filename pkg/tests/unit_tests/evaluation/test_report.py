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
import json

import pytest

import embedding_distillation.errors as errors
import embedding_distillation.evaluation as evaluation


def test_report_lines():
    report = evaluation.RetrievalReport({4: 0.9, 1: 0.5}, 20)
    lines = report.to_lines(network="student", seed=3)
    assert [json.loads(line) for line in lines] == [
        {"network": "student", "seed": 3, "k": 1, "recall": 0.5, "num_queries": 20},
        {"network": "student", "seed": 3, "k": 4, "recall": 0.9, "num_queries": 20},
    ]
    assert evaluation.RetrievalReport.from_lines(lines + [""]) == report
    assert report.get_result_string() == "R@1: 0.5000, R@4: 0.9000 (20 queries)"


def test_invalid_report_lines():
    with pytest.raises(errors.RetrievalError):
        evaluation.RetrievalReport.from_lines(["{\"k\": 1}"])
    with pytest.raises(errors.RetrievalError):
        evaluation.RetrievalReport.from_lines(["not json"])
    with pytest.raises(errors.RetrievalError):
        evaluation.RetrievalReport.from_lines([])


def test_average_reports():
    averaged = evaluation.average_reports([
        evaluation.RetrievalReport({1: 0.25, 2: 0.5}, 8),
        evaluation.RetrievalReport({1: 0.75, 2: 1.0}, 8),
    ])
    assert averaged.recall(1) == pytest.approx(0.5)
    assert averaged.recall(2) == pytest.approx(0.75)
    assert averaged.num_queries == 8
    with pytest.raises(errors.RetrievalError):
        evaluation.average_reports([])
    with pytest.raises(errors.RetrievalError):
        evaluation.average_reports([
            evaluation.RetrievalReport({1: 0.25}, 8),
            evaluation.RetrievalReport({2: 0.5}, 8),
        ])
