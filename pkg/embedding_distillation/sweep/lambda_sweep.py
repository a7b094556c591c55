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
import asyncio
import concurrent.futures
import dataclasses
import logging
import time

import octobot_commons.logging as common_logging

import embedding_distillation.constants as constants
import embedding_distillation.enums as enums
import embedding_distillation.errors as errors
import embedding_distillation.model as model
import embedding_distillation.data as data
import embedding_distillation.trainer as trainer
import embedding_distillation.sweep.sweep_result as sweep_result

SWEPT_MODES = (enums.DistillationMode.ABSOLUTE, enums.DistillationMode.RELATIVE)


@dataclasses.dataclass(frozen=True)
class SweepJob:
    mode: enums.DistillationMode
    lambda_: float
    seed: int
    # checkpoint bytes keep the job picklable and the teacher untouchable
    teacher_checkpoint: bytes
    dataset: data.Dataset
    student_config: model.NetConfig
    train_config: trainer.TrainConfig


def _init_sweep_process_logger():
    logging.basicConfig(
        format="[LambdaSweep %(process)d] %(levelname)-6s %(name)-20s %(filename)-s:%(lineno)-8s %(message)s",
        level=logging.ERROR
    )


def run_sweep_job(job: SweepJob) -> sweep_result.SweepRunResult:
    """
    Distills one student and returns its best validation Recall@1. Errors are returned, not raised,
    so that one failing run doesn't stop the sweep.
    """
    _init_sweep_process_logger()
    try:
        teacher = model.checkpoint_from_bytes(job.teacher_checkpoint)
        result = trainer.distill_student(teacher, job.dataset, job.student_config, job.train_config)
        recall = trainer.validation_recall_at_1(result.best_net, result.eval_dataset)
        if recall is None:
            return sweep_result.SweepRunResult(job.mode, job.lambda_, job.seed,
                                               error="not enough validation classes")
        return sweep_result.SweepRunResult(job.mode, job.lambda_, job.seed, recall)
    except errors.EmbeddingDistillationError as err:
        return sweep_result.SweepRunResult(job.mode, job.lambda_, job.seed, error=f"{type(err).__name__}: {err}")
    except Exception as err:
        common_logging.get_logger(LambdaSweep.get_name()).exception(
            err, True, f"Unexpected error in the {job.mode.value} lambda={job.lambda_:g} seed={job.seed} run: {err}"
        )
        return sweep_result.SweepRunResult(job.mode, job.lambda_, job.seed, error=f"{type(err).__name__}: {err}")


class LambdaSweep:
    """
    LambdaSweep distills one student per (mode, lambda, seed) in a process pool bounded by jobs
    and aggregates validation Recall@1 per (mode, lambda)
    """

    def __init__(self, teachers_by_seed: dict, dataset: data.Dataset, student_config: model.NetConfig,
                 train_config_by_seed: dict, lambda_values, jobs=constants.DEFAULT_JOBS):
        self.logger = common_logging.get_logger(self.get_name())
        if not lambda_values:
            raise errors.ConfigError("sweep.values", "at least one lambda value is required")
        if any(value < 0 for value in lambda_values):
            raise errors.ConfigError("sweep.values", f"lambda values must be >= 0, got {list(lambda_values)}")
        if jobs < 1:
            raise errors.ConfigError("jobs", f"at least one worker is required, got {jobs}")
        if set(teachers_by_seed) != set(train_config_by_seed):
            raise errors.ConfigError("training.seeds", "every seed requires a teacher and a training config")
        self.teacher_checkpoints = {
            seed: model.checkpoint_bytes(teacher) for seed, teacher in teachers_by_seed.items()
        }
        self.dataset = dataset
        self.student_config = student_config
        self.train_config_by_seed = train_config_by_seed
        self.lambda_values = tuple(sorted(set(float(value) for value in lambda_values)))
        self.jobs = jobs
        self.run_results = []
        self.is_computing = False

    @classmethod
    def get_name(cls):
        return cls.__name__

    def create_jobs(self) -> list:
        return [
            SweepJob(
                mode, lambda_, seed, self.teacher_checkpoints[seed], self.dataset, self.student_config,
                self.train_config_by_seed[seed].replace(
                    mode=mode, weights=dataclasses.replace(self.train_config_by_seed[seed].weights, lambda_=lambda_)
                ),
            )
            for mode in SWEPT_MODES
            for lambda_ in self.lambda_values
            for seed in sorted(self.train_config_by_seed)
        ]

    async def run(self) -> sweep_result.SweepTable:
        if self.is_computing:
            raise errors.ConfigError("sweep", "this sweep is already running")
        self.is_computing = True
        self.run_results = []
        previous_log_level = common_logging.get_global_logger_level()
        previous_log_level_per_handler = common_logging.get_logger_level_per_handler()
        started_at = time.time()
        try:
            jobs = self.create_jobs()
            self.logger.info(f"Dispatching {len(jobs)} distillation runs into {self.jobs} parallel processes.")
            self.logger.info("Setting logging level to logging.ERROR to limit messages.")
            common_logging.set_global_logger_level(logging.ERROR)
            loop = asyncio.get_running_loop()
            with concurrent.futures.ProcessPoolExecutor(max_workers=self.jobs) as pool:
                self.run_results = await asyncio.gather(*(
                    loop.run_in_executor(pool, run_sweep_job, job)
                    for job in jobs
                ))
        finally:
            common_logging.set_global_logger_level(previous_log_level,
                                                   handler_levels=previous_log_level_per_handler)
            self.is_computing = False
        for run_result in self.run_results:
            if run_result.failed:
                self.logger.error(f"Sweep run {run_result.get_result_string()}")
        self.logger.info(f"Lambda sweep complete in {time.time() - started_at:.1f} seconds.")
        return sweep_result.SweepTable(self.run_results)
