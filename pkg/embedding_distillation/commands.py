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
import dataclasses
import os
import typing

import octobot_commons.logging as logging

import embedding_distillation.constants as constants
import embedding_distillation.errors as errors
import embedding_distillation.evaluation as evaluation
import embedding_distillation.api as api

COMMANDS_LOGGER_NAME = "Commands"
SEED_FOLDER_PREFIX = "seed_"
SWEEP_FOLDER = "sweep_lambda"
EVAL_REPORT_FILE = "eval_report.jsonl"
NETWORK_FIELD = "network"
SEED_FIELD = "seed"


@dataclasses.dataclass
class DistillationSummary:
    run_dir: str
    student_report: evaluation.RetrievalReport
    teacher_report: typing.Optional[evaluation.RetrievalReport]
    student_digests: dict


def seed_dir(output_dir, seed) -> str:
    return os.path.join(output_dir, f"{SEED_FOLDER_PREFIX}{seed}")


def teacher_checkpoint_path(output_dir, seed) -> str:
    return os.path.join(seed_dir(output_dir, seed), constants.TEACHER_CHECKPOINT_FILE)


def write_lines(path, lines):
    try:
        os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
        with open(path, "w", encoding="utf-8") as output_file:
            output_file.writelines(f"{line}\n" for line in lines)
    except OSError as err:
        raise errors.OutputFileError(f"{path}: cannot write ({err.strerror or err})") from err


def run_name(train_config) -> str:
    """
    Output folder of a distillation run, named after what changes its result
    """
    name = train_config.mode.value
    if train_config.use_hint:
        name += "_hint"
    if train_config.use_attention:
        name += "_attention"
    if train_config.semi is not None:
        name += "_kd_only" if train_config.semi.kd_only else f"_semi{train_config.semi.labeled_fraction:g}"
        if not (train_config.semi.kd_only or train_config.semi.use_unlabeled):
            name += "_labeled"
    if train_config.cross_quality is not None:
        name += f"_{train_config.cross_quality.kind.value}"
    return name


def train_teachers(config_path, overrides=None) -> dict:
    """
    Trains one teacher per seed and writes checkpoint, metrics log and test report next to the config snapshot
    :return: the test RetrievalReport of every seed
    """
    logger = logging.get_logger(COMMANDS_LOGGER_NAME)
    experiment = api.load_experiment(config_path, overrides)
    api.write_config_snapshot(experiment)
    dataset = api.load_dataset(experiment)
    reports = {}
    for seed in experiment.seeds:
        output_dir = seed_dir(experiment.output_dir, seed)
        os.makedirs(output_dir, exist_ok=True)
        result = api.train_teacher(
            experiment, dataset, seed, os.path.join(output_dir, constants.METRICS_LOG_FILE)
        )
        api.save_net(result.best_net, teacher_checkpoint_path(experiment.output_dir, seed))
        reports[seed] = api.evaluate_net(result.best_net, dataset, experiment.k_values)
        write_lines(
            os.path.join(output_dir, constants.REPORT_FILE),
            reports[seed].to_lines(**{NETWORK_FIELD: "teacher", SEED_FIELD: seed})
        )
        logger.info(f"Teacher seed {seed} (best epoch {result.best_epoch}): {reports[seed].get_result_string()}")
    write_lines(
        os.path.join(experiment.output_dir, constants.REPORT_FILE),
        evaluation.average_reports(list(reports.values())).to_lines(**{NETWORK_FIELD: "teacher"})
    )
    return reports


def _load_teacher(experiment, teacher_path, seed):
    path = teacher_path or teacher_checkpoint_path(experiment.output_dir, seed)
    if not os.path.isfile(path):
        raise errors.ConfigError("teacher", f"teacher checkpoint {path} not found, run train-teacher first")
    return api.load_net(path, expected_config=experiment.teacher)


def distill(config_path, overrides=None, teacher_path=None) -> DistillationSummary:
    """
    Distills one student per seed. Without teacher_path, each seed reads the teacher train-teacher wrote
    for the same seed.
    """
    logger = logging.get_logger(COMMANDS_LOGGER_NAME)
    experiment = api.load_experiment(config_path, overrides)
    train_config = experiment.train_config()
    run_dir = os.path.join(experiment.output_dir, run_name(train_config))
    api.write_config_snapshot(experiment, run_dir)
    dataset = api.load_dataset(experiment)
    student_reports, teacher_reports, student_digests = [], [], {}
    for seed in experiment.seeds:
        output_dir = seed_dir(run_dir, seed)
        os.makedirs(output_dir, exist_ok=True)
        teacher = _load_teacher(experiment, teacher_path, seed) if train_config.needs_teacher else None
        result = api.distill_student(
            experiment, dataset, teacher, seed, os.path.join(output_dir, constants.METRICS_LOG_FILE)
        )
        api.save_net(result.best_net, os.path.join(output_dir, constants.STUDENT_CHECKPOINT_FILE))
        student_digests[seed] = api.get_net_digest(result.best_net)
        student_report = api.evaluate_net(result.best_net, result.eval_dataset, experiment.k_values)
        student_reports.append(student_report)
        lines = student_report.to_lines(**{NETWORK_FIELD: "student", SEED_FIELD: seed})
        if teacher is not None:
            teacher_report = api.evaluate_net(teacher, dataset, experiment.k_values)
            teacher_reports.append(teacher_report)
            lines += teacher_report.to_lines(**{NETWORK_FIELD: "teacher", SEED_FIELD: seed})
        write_lines(os.path.join(output_dir, constants.REPORT_FILE), lines)
        logger.info(f"Student seed {seed} (best epoch {result.best_epoch}): {student_report.get_result_string()}")
    summary = DistillationSummary(
        run_dir,
        evaluation.average_reports(student_reports),
        evaluation.average_reports(teacher_reports) if teacher_reports else None,
        student_digests,
    )
    lines = summary.student_report.to_lines(**{NETWORK_FIELD: "student"})
    if summary.teacher_report is not None:
        lines += summary.teacher_report.to_lines(**{NETWORK_FIELD: "teacher"})
    write_lines(os.path.join(run_dir, constants.REPORT_FILE), lines)
    return summary


def evaluate(checkpoint_path, k_values, dataset_path=None, config_path=None, report_path=None,
             embeddings_path=None) -> evaluation.RetrievalReport:
    """
    Evaluates a checkpoint on every sample of a CSV dataset, or on the test split of the
    config dataset when no CSV is given
    """
    net = api.load_net(checkpoint_path)
    if dataset_path is not None:
        dataset = api.load_csv_dataset(dataset_path)
    else:
        dataset = api.load_dataset(api.load_experiment(config_path or constants.DEFAULT_EXPERIMENT_FILE))
    report = api.evaluate_net(net, dataset, k_values)
    report_path = report_path or os.path.join(os.path.dirname(checkpoint_path) or ".", EVAL_REPORT_FILE)
    write_lines(report_path, report.to_lines())
    if embeddings_path is not None:
        api.export_embeddings(net, dataset, embeddings_path)
    return report


def sweep_lambda(config_path, lambda_values, overrides=None, jobs=constants.DEFAULT_JOBS, teacher_path=None):
    """
    Distills abs and rel students for every lambda and seed, reusing the train-teacher checkpoints
    of each seed and training the missing ones
    :return: the SweepTable, also written as JSON lines in the sweep folder
    """
    logger = logging.get_logger(COMMANDS_LOGGER_NAME)
    if not lambda_values:
        raise errors.ConfigError("values", "at least one lambda value is required")
    experiment = api.load_experiment(config_path, overrides)
    sweep_dir = os.path.join(experiment.output_dir, SWEEP_FOLDER)
    api.write_config_snapshot(experiment, sweep_dir)
    dataset = api.load_dataset(experiment)
    teachers = {}
    for seed in experiment.seeds:
        path = teacher_path or teacher_checkpoint_path(experiment.output_dir, seed)
        if os.path.isfile(path):
            teachers[seed] = api.load_net(path, expected_config=experiment.teacher)
        else:
            logger.info(f"No teacher checkpoint at {path}, training the seed {seed} teacher.")
            teachers[seed] = api.train_teacher(experiment, dataset, seed).best_net
            api.save_net(teachers[seed], path)
    lambda_sweep = api.create_lambda_sweep(
        teachers, dataset, experiment.student,
        {seed: experiment.train_config(seed) for seed in experiment.seeds},
        lambda_values, jobs,
    )
    table = asyncio.run(api.run_lambda_sweep(lambda_sweep))
    write_lines(os.path.join(sweep_dir, constants.SWEEP_TABLE_FILE), table.to_lines())
    return table


def gradcheck(points_per_case=constants.GRAD_CHECK_POINTS, seed=0, cases=None) -> list:
    return api.run_gradient_checks(cases, points_per_case, seed)
