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

import embedding_distillation.errors as errors


@dataclasses.dataclass(frozen=True)
class EpochMetrics:
    EPOCH_KEY = "epoch"
    VAL_RECALL_AT_1_KEY = "val_recall@1"
    WALL_MS_KEY = "wall_ms"

    epoch: int
    loss_total: float
    loss_ml: float
    loss_kd: float
    loss_hint: float
    loss_at: float
    val_recall_at_1: typing.Optional[float]
    wall_ms: float = 0.0

    def to_dict(self, with_wall_time=True) -> dict:
        record = {
            self.EPOCH_KEY: self.epoch,
            "loss_total": self.loss_total,
            "loss_ml": self.loss_ml,
            "loss_kd": self.loss_kd,
            "loss_hint": self.loss_hint,
            "loss_at": self.loss_at,
            self.VAL_RECALL_AT_1_KEY: self.val_recall_at_1,
        }
        if with_wall_time:
            record[self.WALL_MS_KEY] = self.wall_ms
        return record

    def to_line(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, record):
        return cls(
            int(record[cls.EPOCH_KEY]),
            float(record["loss_total"]),
            float(record["loss_ml"]),
            float(record["loss_kd"]),
            float(record["loss_hint"]),
            float(record["loss_at"]),
            record[cls.VAL_RECALL_AT_1_KEY],
            float(record.get(cls.WALL_MS_KEY, 0.0)),
        )


class MetricsLog:
    """
    Append only JSON lines log, flushed after every epoch. wall_ms is the only field that differs
    between two identical runs.
    """

    def __init__(self, path=None):
        self.path = path
        self.records: list[EpochMetrics] = []
        self._file = None
        if path:
            try:
                self._file = open(path, "w", encoding="utf-8")
            except OSError as err:
                raise errors.OutputFileError(f"{path}: cannot write the metrics log ({err.strerror or err})") from err

    def append(self, record: EpochMetrics):
        self.records.append(record)
        if self._file is not None:
            self._file.write(record.to_line() + "\n")
            self._file.flush()

    def close(self):
        if self._file is not None:
            self._file.close()
            self._file = None

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.close()

    def deterministic_records(self) -> list:
        return [record.to_dict(with_wall_time=False) for record in self.records]


def read_metrics_log(path) -> list:
    with open(path, encoding="utf-8") as log_file:
        return [EpochMetrics.from_dict(json.loads(line)) for line in log_file if line.strip()]
