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
import argparse
import sys

import numpy
import packaging.version as packaging_version

import octobot_commons.logging as logging

import embedding_distillation.constants as constants
import embedding_distillation.enums as enums
import embedding_distillation.errors as errors
import embedding_distillation.commands as commands
import embedding_distillation.logger as embedding_distillation_logger

CLI_LOGGER_NAME = "CLI"
MODES_BY_FLAG = {
    "abs": enums.DistillationMode.ABSOLUTE.value,
    "rel": enums.DistillationMode.RELATIVE.value,
    "baseline": enums.DistillationMode.BASELINE.value,
}
NUMERIC_ERRORS = (errors.GradientError, errors.TensorDomainError)


def _int_list(value):
    try:
        return [int(element) for element in value.split(",") if element.strip()]
    except ValueError as err:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got '{value}'") from err


def _float_list(value):
    try:
        return [float(element) for element in value.split(",") if element.strip()]
    except ValueError as err:
        raise argparse.ArgumentTypeError(f"expected comma separated numbers, got '{value}'") from err


def _experiment_overrides(args) -> dict:
    """
    Maps command line flags to dotted config fields, unset flags keep the config file values
    """
    training = enums.ExperimentConfigKeys.TRAINING.value
    keys = enums.TrainingConfigKeys
    overrides = {
        enums.ExperimentConfigKeys.OUTPUT_DIR.value: args.output_dir,
        f"{training}.{keys.SEEDS.value}": args.seeds,
        f"{training}.{keys.EPOCHS.value}": getattr(args, "epochs", None),
    }
    if getattr(args, "mode", None) is not None:
        overrides[f"{training}.{keys.MODE.value}"] = MODES_BY_FLAG[args.mode]
    if getattr(args, "hint", False):
        overrides[f"{training}.{keys.USE_HINT.value}"] = True
    if getattr(args, "attention", False):
        overrides[f"{training}.{keys.USE_ATTENTION.value}"] = True
    overrides[f"{training}.{keys.LAMBDA.value}"] = getattr(args, "lambda_", None)
    overrides[f"{training}.{keys.MU.value}"] = getattr(args, "mu", None)
    overrides[f"{training}.{keys.KAPPA.value}"] = getattr(args, "kappa", None)
    if getattr(args, "semi", None) is not None or getattr(args, "kd_only", False):
        overrides[f"{training}.{keys.SEMI.value}"] = {
            keys.LABELED_FRACTION.value: args.semi if args.semi is not None else constants.DEFAULT_LABELED_FRACTION,
            keys.USE_UNLABELED.value: not args.labeled_only,
            keys.KD_ONLY.value: args.kd_only,
        }
    if getattr(args, "cross_quality", None) is not None:
        overrides[f"{training}.{keys.CROSS_QUALITY.value}"] = {
            keys.DEGRADATION_KIND.value: args.cross_quality,
            keys.DEGRADATION_FACTOR.value: args.degradation_factor,
            keys.DEGRADATION_SIGMA.value: args.degradation_sigma,
            keys.DEGRADATION_FRACTION.value: args.degradation_fraction,
        }
    return overrides


def train_teacher(args):
    for seed, report in commands.train_teachers(args.config, _experiment_overrides(args)).items():
        for line in report.to_lines(network="teacher", seed=seed):
            print(line)
    return constants.EXIT_SUCCESS


def distill(args):
    summary = commands.distill(args.config, _experiment_overrides(args), args.teacher)
    for line in summary.student_report.to_lines(network="student"):
        print(line)
    if summary.teacher_report is not None:
        for line in summary.teacher_report.to_lines(network="teacher"):
            print(line)
    return constants.EXIT_SUCCESS


def evaluate(args):
    report = commands.evaluate(args.checkpoint, args.k, args.dataset, args.config, args.report, args.embeddings)
    for line in report.to_lines():
        print(line)
    return constants.EXIT_SUCCESS


def sweep_lambda(args):
    table = commands.sweep_lambda(args.config, args.values, _experiment_overrides(args), args.jobs, args.teacher)
    for line in table.to_lines():
        print(line)
    return constants.EXIT_SUCCESS


def gradcheck(args):
    rows = commands.gradcheck(args.points, args.seed)
    for row in rows:
        print(row.to_line())
    return constants.EXIT_SUCCESS if all(row.passed for row in rows) else constants.EXIT_NUMERIC_ERROR


def _add_experiment_arguments(parser, with_epochs=True):
    parser.add_argument("config", nargs="?", default=constants.DEFAULT_EXPERIMENT_FILE,
                        help="Experiment config JSON file, the packaged desk scale experiment by default.")
    parser.add_argument("--seeds", type=_int_list, help="Comma separated seeds overriding training.seeds.")
    parser.add_argument("--output-dir", help="Output directory overriding the config one.")
    if with_epochs:
        parser.add_argument("--epochs", type=int, help="Epoch count overriding training.epochs.")


def _add_distillation_arguments(parser):
    parser.add_argument("--teacher", help="Teacher checkpoint, the train-teacher output of each seed by default.")
    parser.add_argument("--mode", choices=sorted(MODES_BY_FLAG), help="Distillation mode.")
    parser.add_argument("--hint", action="store_true", help="Add the hint loss on the configured tap pairs.")
    parser.add_argument("--attention", action="store_true",
                        help="Add the attention loss on the configured tap pairs.")
    parser.add_argument("--lambda", dest="lambda_", type=float, help="Distillation loss weight.")
    parser.add_argument("--mu", type=float, help="Hint loss weight.")
    parser.add_argument("--kappa", type=float, help="Attention loss weight.")
    parser.add_argument("--semi", type=float, nargs="?", const=constants.DEFAULT_LABELED_FRACTION,
                        help="Semi supervised training keeping this fraction of the training labels.")
    parser.add_argument("--labeled-only", action="store_true",
                        help="With --semi: ignore the unlabeled samples.")
    parser.add_argument("--kd-only", action="store_true",
                        help="Train on distillation losses only, without any label.")
    parser.add_argument("--cross-quality", choices=[kind.value for kind in enums.DegradationKind],
                        help="Degrade the student inputs, the teacher keeps the clean ones.")
    parser.add_argument("--degradation-factor", type=int, default=2, help="lowres downsampling factor.")
    parser.add_argument("--degradation-sigma", type=float, default=0.5, help="noise standard deviation.")
    parser.add_argument("--degradation-fraction", type=float, default=0.5, help="mask zeroed fraction.")


def embedding_distillation_parser(parser):
    parser.add_argument("-v", "--version", action="version",
                        version=f"{constants.PROJECT_NAME} {constants.LONG_VERSION}")
    subparsers = parser.add_subparsers(title="Commands", dest="command", required=True)

    train_teacher_parser = subparsers.add_parser("train-teacher", help="Train one teacher per seed.")
    _add_experiment_arguments(train_teacher_parser)
    train_teacher_parser.set_defaults(func=train_teacher)

    distill_parser = subparsers.add_parser("distill", help="Distill one student per seed.")
    _add_experiment_arguments(distill_parser)
    _add_distillation_arguments(distill_parser)
    distill_parser.set_defaults(func=distill)

    eval_parser = subparsers.add_parser("eval", help="Recall@K of a checkpoint.")
    eval_parser.add_argument("--checkpoint", required=True, help="Checkpoint to evaluate.")
    eval_parser.add_argument("--dataset", help="CSV dataset evaluated as a whole, the config test split otherwise.")
    eval_parser.add_argument("--config", help="Experiment config providing the dataset when --dataset is not set.")
    eval_parser.add_argument("--k", type=_int_list, default=list(constants.DEFAULT_K_VALUES),
                             help="Comma separated K values.")
    eval_parser.add_argument("--report", help="Report file, next to the checkpoint by default.")
    eval_parser.add_argument("--embeddings", help="Also export the evaluated embeddings to this file.")
    eval_parser.set_defaults(func=evaluate)

    sweep_parser = subparsers.add_parser("sweep-lambda", help="Validation Recall@1 as a function of lambda.")
    _add_experiment_arguments(sweep_parser)
    sweep_parser.add_argument("--values", type=_float_list, default=list(constants.DEFAULT_SWEEP_LAMBDAS),
                              help="Comma separated lambda values.")
    sweep_parser.add_argument("--jobs", type=int, default=constants.DEFAULT_JOBS, help="Parallel worker processes.")
    sweep_parser.add_argument("--teacher", help="Teacher checkpoint shared by every seed.")
    sweep_parser.set_defaults(func=sweep_lambda)

    gradcheck_parser = subparsers.add_parser("gradcheck", help="Finite difference checks of every gradient.")
    gradcheck_parser.add_argument("--points", type=int, default=constants.GRAD_CHECK_POINTS,
                                  help="Random points per checked function.")
    gradcheck_parser.add_argument("--seed", type=int, default=0, help="Random points seed.")
    gradcheck_parser.set_defaults(func=gradcheck)


def _check_numpy_version():
    if packaging_version.Version(numpy.__version__) < packaging_version.Version(constants.MIN_NUMPY_VERSION):
        print(f"{constants.PROJECT_NAME} requires numpy in a minimum version of {constants.MIN_NUMPY_VERSION}, "
              f"found {numpy.__version__}", file=sys.stderr)
        sys.exit(constants.EXIT_CONFIG_ERROR)


def main(args=None) -> int:
    if args is None:
        args = sys.argv[1:]
    _check_numpy_version()
    parser = argparse.ArgumentParser(description=constants.PROJECT_NAME)
    embedding_distillation_parser(parser)
    args = parser.parse_args(args)
    embedding_distillation_logger.init_logger()
    logger = logging.get_logger(CLI_LOGGER_NAME)
    try:
        return args.func(args)
    except errors.ConfigError as err:
        logger.error(f"Invalid configuration: {err}")
        return constants.EXIT_CONFIG_ERROR
    except NUMERIC_ERRORS as err:
        logger.exception(err, True, f"Numeric failure: {err}")
        return constants.EXIT_NUMERIC_ERROR
    except errors.EmbeddingDistillationError as err:
        logger.error(f"{args.command} failed: {err}")
        return constants.EXIT_CONFIG_ERROR
    except OSError as err:
        logger.error(f"{args.command} failed: {err}")
        return constants.EXIT_CONFIG_ERROR
