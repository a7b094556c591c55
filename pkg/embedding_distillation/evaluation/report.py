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

import octobot_commons.data_util as data_util

import embedding_distillation.errors as errors


@dataclasses.dataclass(frozen=True)
class RetrievalReport:
    K_KEY = "k"
    RECALL_KEY = "recall"
    NUM_QUERIES_KEY = "num_queries"

    recall_at: dict
    num_queries: int

    @property
    def k_values(self) -> list:
        return sorted(self.recall_at)

    def recall(self, k) -> float:
        return self.recall_at[k]

    def to_lines(self, **extra_fields) -> list:
        return [
            json.dumps({
                **extra_fields,
                self.K_KEY: k,
                self.RECALL_KEY: self.recall_at[k],
                self.NUM_QUERIES_KEY: self.num_queries,
            })
            for k in self.k_values
        ]

    @classmethod
    def from_lines(cls, lines):
        recall_at = {}
        num_queries = None
        for line in lines:
            if not line.strip():
                continue
            try:
                record = json.loads(line)
                recall_at[int(record[cls.K_KEY])] = float(record[cls.RECALL_KEY])
                num_queries = int(record[cls.NUM_QUERIES_KEY])
            except (ValueError, KeyError, TypeError) as err:
                raise errors.RetrievalError(f"invalid report line '{line.strip()}': {err}") from err
        if not recall_at:
            raise errors.RetrievalError("empty retrieval report")
        return cls(recall_at, num_queries)

    def get_result_string(self) -> str:
        return ", ".join(f"R@{k}: {self.recall_at[k]:.4f}" for k in self.k_values) + \
            f" ({self.num_queries} queries)"


def average_reports(reports) -> RetrievalReport:
    """
    Mean recall per K over repeated runs sharing the same K values
    """
    if not reports:
        raise errors.RetrievalError("average_reports: no report to average")
    k_values = reports[0].k_values
    if any(single_report.k_values != k_values for single_report in reports):
        raise errors.RetrievalError("average_reports: reports don't share the same K values")
    return RetrievalReport(
        {k: data_util.mean([single_report.recall_at[k] for single_report in reports]) for k in k_values},
        reports[0].num_queries,
    )
