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
import json
import os

import mock
import pytest

import embedding_distillation.constants as constants
import embedding_distillation.core as core
import embedding_distillation.errors as errors
import embedding_distillation.commands as commands
import embedding_distillation.gradient_suite as gradient_suite
import embedding_distillation.model as model
import embedding_distillation.cli as cli
import tests.test_utils.builders as builders


@pytest.fixture(autouse=True)
def no_file_logs():
    with mock.patch.object(constants, "ENABLE_FILE_LOGS", False):
        yield


def _parse(args):
    parser = argparse.ArgumentParser()
    cli.embedding_distillation_parser(parser)
    return parser.parse_args(args)


def _broken_case(rng):
    return (lambda value: core.multiply(value, core.Tensor(value.data)).sum()), rng.normal(size=(2, ))


def test_version(capsys):
    with pytest.raises(SystemExit) as err:
        cli.main(["--version"])
    assert err.value.code == 0
    assert constants.PROJECT_NAME in capsys.readouterr().out


def test_usage_errors():
    with pytest.raises(SystemExit) as err:
        cli.main([])
    assert err.value.code == 2
    with pytest.raises(SystemExit) as err:
        cli.main(["sweep-lambda", "--values", "1,x"])
    assert err.value.code == 2
    with pytest.raises(SystemExit) as err:
        cli.main(["distill", "--mode", "fancy"])
    assert err.value.code == 2


def test_distillation_flags_become_overrides():
    overrides = cli._experiment_overrides(_parse([
        "distill", "my.json", "--mode", "abs", "--lambda", "2.5", "--attention", "--semi", "--kd-only",
        "--cross-quality", "noise", "--degradation-sigma", "0.2", "--seeds", "3,4", "--output-dir", "out",
    ]))
    assert overrides["training.mode"] == "distill_abs"
    assert overrides["training.lambda"] == 2.5
    assert overrides["training.use_attention"] is True
    assert "training.use_hint" not in overrides
    assert overrides["training.mu"] is None
    assert overrides["training.seeds"] == [3, 4]
    assert overrides["output_dir"] == "out"
    assert overrides["training.semi"] == {"labeled_fraction": 0.5, "use_unlabeled": True, "kd_only": True}
    assert overrides["training.cross_quality"] == {"kind": "noise", "factor": 2, "sigma": 0.2, "fraction": 0.5}
    plain = cli._experiment_overrides(_parse(["distill", "--semi", "0.1", "--labeled-only"]))
    assert plain["training.semi"] == {"labeled_fraction": 0.1, "use_unlabeled": False, "kd_only": False}
    assert "training.cross_quality" not in plain
    assert _parse(["train-teacher"]).config == constants.DEFAULT_EXPERIMENT_FILE


def test_train_teacher(tmp_path, capsys):
    assert cli.main([
        "train-teacher", builders.SMALL_EXPERIMENT_FILE, "--seeds", "0", "--epochs", "1", "--output-dir", str(tmp_path)
    ]) == constants.EXIT_SUCCESS
    lines = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
    assert [(line["network"], line["seed"], line["k"]) for line in lines] == [
        ("teacher", 0, 1), ("teacher", 0, 2), ("teacher", 0, 4)
    ]
    assert os.path.isfile(commands.teacher_checkpoint_path(tmp_path, 0))


def test_config_errors_exit_with_2(tmp_path):
    assert cli.main(["eval", "--checkpoint", os.path.join(tmp_path, "missing.mdck")]) == \
        constants.EXIT_CONFIG_ERROR
    assert cli.main(["distill", os.path.join(tmp_path, "missing.json")]) == constants.EXIT_CONFIG_ERROR
    assert cli.main(["distill", builders.SMALL_EXPERIMENT_FILE, "--output-dir", str(tmp_path)]) == \
        constants.EXIT_CONFIG_ERROR
    assert cli.main(["distill", builders.SMALL_EXPERIMENT_FILE, "--hint", "--mu", "-1",
                     "--output-dir", str(tmp_path)]) == constants.EXIT_CONFIG_ERROR


def test_unreadable_and_unwritable_files_exit_with_2(tmp_path, capsys):
    checkpoint_path = os.path.join(tmp_path, "student.mdck")
    model.save_checkpoint(model.init_params(builders.small_student_config(), 0), checkpoint_path)
    assert cli.main(["eval", "--checkpoint", checkpoint_path, "--dataset", os.path.join(tmp_path, "missing.csv")]) \
        == constants.EXIT_CONFIG_ERROR
    not_a_folder = os.path.join(tmp_path, "file")
    with open(not_a_folder, "w", encoding="utf-8") as regular_file:
        regular_file.write("")
    assert cli.main(["eval", "--checkpoint", checkpoint_path, "--dataset", builders.SMALL_DATASET_FILE,
                     "--k", "1", "--report", os.path.join(not_a_folder, "report.jsonl")]) == \
        constants.EXIT_CONFIG_ERROR
    assert cli.main(["train-teacher", builders.SMALL_EXPERIMENT_FILE,
                     "--output-dir", not_a_folder]) == constants.EXIT_CONFIG_ERROR
    assert capsys.readouterr().out == ""
    with mock.patch.object(commands, "evaluate", mock.Mock(side_effect=PermissionError(13, "denied", "out"))):
        assert cli.main(["eval", "--checkpoint", checkpoint_path]) == constants.EXIT_CONFIG_ERROR


def test_numeric_errors_exit_with_3(tmp_path):
    with mock.patch.object(commands, "train_teachers", mock.Mock(side_effect=errors.NonFiniteGradientError(4, "w"))):
        assert cli.main(["train-teacher", "--output-dir", str(tmp_path)]) == constants.EXIT_NUMERIC_ERROR
    with mock.patch.object(commands, "distill", mock.Mock(side_effect=errors.TensorDomainError("sqrt(-1)"))):
        assert cli.main(["distill", "--output-dir", str(tmp_path)]) == constants.EXIT_NUMERIC_ERROR


def test_gradcheck(capsys):
    passing = [case for case in gradient_suite.default_cases() if case.name == "square"]
    with mock.patch.object(gradient_suite, "default_cases", mock.Mock(return_value=passing)):
        assert cli.main(["gradcheck", "--points", "2"]) == constants.EXIT_SUCCESS
    assert json.loads(capsys.readouterr().out)["passed"] is True
    broken = [gradient_suite.GradientCase("broken", _broken_case)]
    with mock.patch.object(gradient_suite, "default_cases", mock.Mock(return_value=broken)):
        assert cli.main(["gradcheck", "--points", "2"]) == constants.EXIT_NUMERIC_ERROR
    assert json.loads(capsys.readouterr().out) == {
        "name": "broken", "max_relative_error": pytest.approx(1 / 3, abs=1e-3), "passed": False
    }
