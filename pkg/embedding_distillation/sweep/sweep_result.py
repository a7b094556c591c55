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
import typing

import octobot_commons.data_util as data_util

import embedding_distillation.enums as enums


class SweepRunResult:
    """
    Validation Recall@1 of one (mode, lambda, seed) run, or the error that stopped it
    """

    def __init__(self, mode: enums.DistillationMode, lambda_, seed, val_recall_at_1=None, error=None):
        self.mode = mode
        self.lambda_ = lambda_
        self.seed = seed
        self.val_recall_at_1 = val_recall_at_1
        self.error = error

    @property
    def failed(self) -> bool:
        return self.error is not None or self.val_recall_at_1 is None

    def get_result_string(self):
        outcome = f"failed: {self.error}" if self.failed else f"validation R@1: {self.val_recall_at_1:.4f}"
        return f"{self.mode.value} lambda={self.lambda_} seed={self.seed} {outcome}"


class SweepRow:
    MODE = "mode"
    LAMBDA = "lambda"
    VAL_RECALL_AT_1 = "val_recall@1"
    RUNS = "runs"
    FAILURES = "failures"

    def __init__(self, mode: enums.DistillationMode, lambda_, run_results):
        self.mode = mode
        self.lambda_ = lambda_
        self.run_results = run_results

    def get_succeeded_runs(self) -> list:
        return [run_result for run_result in self.run_results if not run_result.failed]

    def get_average_recall(self) -> typing.Optional[float]:
        succeeded = self.get_succeeded_runs()
        if not succeeded:
            return None
        return data_util.mean([run_result.val_recall_at_1 for run_result in succeeded])

    def get_result_dict(self) -> dict:
        return {
            SweepRow.MODE: self.mode.value,
            SweepRow.LAMBDA: self.lambda_,
            SweepRow.VAL_RECALL_AT_1: self.get_average_recall(),
            SweepRow.RUNS: len(self.run_results),
            SweepRow.FAILURES: len(self.run_results) - len(self.get_succeeded_runs()),
        }


class SweepTable:
    RANGES = "val_recall@1_range"
    RELATIVE_RANGE_NARROWER = "relative_range_narrower"

    def __init__(self, run_results):
        rows_by_key = {}
        for run_result in run_results:
            rows_by_key.setdefault((run_result.mode.value, run_result.lambda_), []).append(run_result)
        # (mode, lambda) order, runs by seed
        self.rows = [
            SweepRow(results[0].mode, lambda_, sorted(results, key=lambda result: result.seed))
            for (_, lambda_), results in sorted(rows_by_key.items())
        ]

    def get_recall_range(self, mode: enums.DistillationMode) -> typing.Optional[float]:
        recalls = [
            row.get_average_recall()
            for row in self.rows
            if row.mode is mode and row.get_average_recall() is not None
        ]
        return max(recalls) - min(recalls) if recalls else None

    def is_relative_range_narrower(self) -> typing.Optional[bool]:
        relative_range = self.get_recall_range(enums.DistillationMode.RELATIVE)
        absolute_range = self.get_recall_range(enums.DistillationMode.ABSOLUTE)
        if relative_range is None or absolute_range is None:
            return None
        return relative_range < absolute_range

    def get_summary_dict(self) -> dict:
        return {
            SweepTable.RANGES: {
                mode.value: self.get_recall_range(mode)
                for mode in (enums.DistillationMode.ABSOLUTE, enums.DistillationMode.RELATIVE)
            },
            SweepTable.RELATIVE_RANGE_NARROWER: self.is_relative_range_narrower(),
        }

    def to_lines(self) -> list:
        """
        One JSON line per (mode, lambda) row followed by the summary line
        """
        return [json.dumps(row.get_result_dict()) for row in self.rows] + [json.dumps(self.get_summary_dict())]

    def get_result_string(self) -> str:
        lines = []
        for row in self.rows:
            recall = row.get_average_recall()
            failures = len(row.run_results) - len(row.get_succeeded_runs())
            line = f"{row.mode.value:<12} lambda={row.lambda_:<8g} validation R@1: " \
                   f"{'n/a' if recall is None else f'{recall:.4f}'}"
            lines.append(f"{line} ({failures} failed run(s))" if failures else line)
        narrower = self.is_relative_range_narrower()
        lines.append(f"relative R@1 range narrower than absolute: {'n/a' if narrower is None else narrower}")
        return "\n".join(lines)
