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
import copy
import dataclasses
import json
import os
import pathlib
import typing

import jsonschema

import octobot_commons.json_util as json_util
import octobot_commons.logging as logging

import embedding_distillation.constants as constants
import embedding_distillation.enums as enums
import embedding_distillation.errors as errors
import embedding_distillation.model as model
import embedding_distillation.data as data
import embedding_distillation.trainer as trainer

EXPERIMENT_CONFIG_LOGGER_NAME = "ExperimentConfig"


@dataclasses.dataclass(frozen=True)
class DatasetConfig:
    kind: enums.DatasetKind = enums.DatasetKind.SYNTHETIC
    path: typing.Optional[str] = None
    num_classes: int = constants.DEFAULT_NUM_CLASSES
    per_class: int = constants.DEFAULT_PER_CLASS
    input_dim: int = constants.DEFAULT_INPUT_DIM
    height: int = constants.DEFAULT_GRID_SIZE
    width: int = constants.DEFAULT_GRID_SIZE
    channels: int = 1
    intra_std: float = constants.DEFAULT_INTRA_STD
    inter_scale: float = constants.DEFAULT_INTER_SCALE
    seed: int = 0
    validation_fraction: float = constants.DEFAULT_VALIDATION_FRACTION

    @classmethod
    def from_dict(cls, dataset_dict):
        keys = enums.DatasetConfigKeys
        return cls(
            enums.DatasetKind(dataset_dict[keys.KIND.value]),
            dataset_dict.get(keys.PATH.value),
            int(dataset_dict.get(keys.NUM_CLASSES.value, constants.DEFAULT_NUM_CLASSES)),
            int(dataset_dict.get(keys.PER_CLASS.value, constants.DEFAULT_PER_CLASS)),
            int(dataset_dict.get(keys.INPUT_DIM.value, constants.DEFAULT_INPUT_DIM)),
            int(dataset_dict.get(keys.HEIGHT.value, constants.DEFAULT_GRID_SIZE)),
            int(dataset_dict.get(keys.WIDTH.value, constants.DEFAULT_GRID_SIZE)),
            int(dataset_dict.get(keys.CHANNELS.value, 1)),
            float(dataset_dict.get(keys.INTRA_STD.value, constants.DEFAULT_INTRA_STD)),
            float(dataset_dict.get(keys.INTER_SCALE.value, constants.DEFAULT_INTER_SCALE)),
            int(dataset_dict.get(keys.SEED.value, 0)),
            float(dataset_dict.get(keys.VALIDATION_FRACTION.value, constants.DEFAULT_VALIDATION_FRACTION)),
        )

    def load(self) -> data.Dataset:
        """
        :return: the dataset with its class disjoint split applied
        """
        if self.kind is enums.DatasetKind.CSV:
            dataset = data.load_csv_dataset(self.path)
        elif self.kind is enums.DatasetKind.SYNTHETIC_GRID:
            dataset = data.gen_synthetic_grids(
                self.num_classes, self.per_class, self.height, self.width, self.channels,
                self.intra_std, self.inter_scale, self.seed
            )
        else:
            dataset = data.gen_synthetic_clusters(
                self.num_classes, self.per_class, self.input_dim, self.intra_std, self.inter_scale, self.seed
            )
        return data.split_classes_half(dataset, self.validation_fraction, self.seed)

    def sample_shape(self) -> typing.Optional[tuple]:
        """
        :return: the NetConfig input_shape samples will have, None for CSV files
        """
        if self.kind is enums.DatasetKind.SYNTHETIC_GRID:
            return self.height, self.width, self.channels
        if self.kind is enums.DatasetKind.SYNTHETIC:
            return (self.input_dim, )
        return None


@dataclasses.dataclass(frozen=True)
class ExperimentConfig:
    dataset: DatasetConfig
    teacher: model.NetConfig
    student: model.NetConfig
    # raw training section, TrainConfig is built per seed
    training: dict
    seeds: tuple
    k_values: tuple
    output_dir: str
    # effective merged config, what gets snapshotted
    raw: dict = dataclasses.field(default_factory=dict, compare=False)

    def train_config(self, seed=None) -> trainer.TrainConfig:
        return trainer.TrainConfig.from_dict(self.training, self.seeds[0] if seed is None else seed)

    @classmethod
    def from_dict(cls, config_dict, default_output_dir=None):
        """
        Validates config_dict against the experiment schema, then parses and cross checks every section.
        :raise ConfigError: naming the first failing field
        """
        validate_schema(config_dict)
        keys = enums.ExperimentConfigKeys
        dataset_config = _parse_section(keys.DATASET.value, DatasetConfig.from_dict, config_dict[keys.DATASET.value])
        teacher = _parse_section(keys.TEACHER.value, model.NetConfig.from_dict, config_dict[keys.TEACHER.value])
        student = _parse_section(keys.STUDENT.value, model.NetConfig.from_dict, config_dict[keys.STUDENT.value])
        training = config_dict[keys.TRAINING.value]
        seeds = tuple(training.get(enums.TrainingConfigKeys.SEEDS.value, constants.DEFAULT_SEEDS))
        train_config = _parse_section(keys.TRAINING.value, trainer.TrainConfig.from_dict, training)
        k_values = tuple(sorted(set(
            config_dict.get(keys.EVALUATION.value, {}).get(
                enums.EvaluationConfigKeys.K_VALUES.value, constants.DEFAULT_K_VALUES
            )
        )))
        output_dir = config_dict.get(keys.OUTPUT_DIR.value) or default_output_dir or \
            os.path.join(constants.OUTPUT_ROOT, "experiment")
        _check_consistency(dataset_config, teacher, student, train_config)
        return cls(dataset_config, teacher, student, training, seeds, k_values, output_dir,
                   copy.deepcopy(config_dict))

    def to_dict(self) -> dict:
        snapshot = copy.deepcopy(self.raw)
        snapshot[enums.ExperimentConfigKeys.OUTPUT_DIR.value] = self.output_dir
        return snapshot


def _parse_section(field, parser, section):
    try:
        return parser(section)
    except (errors.NetConfigError, errors.TrainConfigError, errors.LossInputError, errors.DatasetError,
            KeyError, ValueError, TypeError) as err:
        raise errors.ConfigError(field, str(err)) from err


def _check_consistency(dataset_config: DatasetConfig, teacher: model.NetConfig, student: model.NetConfig,
                       train_config: trainer.TrainConfig):
    sample_shape = dataset_config.sample_shape()
    for field, net_config in ((enums.ExperimentConfigKeys.TEACHER.value, teacher),
                              (enums.ExperimentConfigKeys.STUDENT.value, student)):
        if sample_shape is not None and tuple(net_config.input_shape) != tuple(sample_shape):
            raise errors.ConfigError(
                f"{field}.input_shape",
                f"{list(net_config.input_shape)} doesn't match the dataset samples {list(sample_shape)}"
            )
    if teacher.input_kind is not student.input_kind:
        raise errors.ConfigError("student.input_kind", "teacher and student must read the same kind of input")
    if train_config.cross_quality is not None and \
            train_config.cross_quality.kind is enums.DegradationKind.LOW_RESOLUTION and \
            student.input_kind is not enums.InputKind.GRID:
        raise errors.ConfigError("training.cross_quality.kind", "lowres degradation requires grid inputs")
    try:
        trainer.check_embedding_dims(student, teacher, train_config)
    except errors.TrainConfigError as err:
        raise errors.ConfigError(f"{enums.ExperimentConfigKeys.STUDENT.value}."
                                 f"{enums.NetConfigKeys.EMBEDDING_DIM.value}", str(err)) from err
    try:
        trainer.check_tap_pairs(student, teacher, train_config)
    except errors.TrainConfigError as err:
        raise errors.ConfigError(f"{enums.ExperimentConfigKeys.TRAINING.value}."
                                 f"{enums.TrainingConfigKeys.TAP_PAIRS.value}", str(err)) from err


def _field_path(error: jsonschema.ValidationError) -> str:
    path = ""
    for element in error.absolute_path:
        path += f"[{element}]" if isinstance(element, int) else (f".{element}" if path else str(element))
    if error.validator == "required":
        # name the missing field itself
        missing = error.message.split("'")[1]
        path = f"{path}.{missing}" if path else missing
    return path or "<root>"


def validate_schema(config_dict, schema_file=constants.EXPERIMENT_SCHEMA_FILE):
    schema = json_util.read_file(schema_file)
    validator = jsonschema.Draft7Validator(schema)
    failures = sorted(validator.iter_errors(config_dict), key=lambda error: list(map(str, error.absolute_path)))
    if failures:
        raise errors.ConfigError(_field_path(failures[0]), failures[0].message)


def _set_path(config_dict, dotted_path, value):
    *parents, leaf = dotted_path.split(".")
    section = config_dict
    for parent in parents:
        section = section.setdefault(parent, {})
    section[leaf] = value


def apply_overrides(config_dict, overrides: dict) -> dict:
    """
    :param overrides: dotted field path (training.lambda) -> value, None values are ignored
    :return: an updated copy of config_dict
    """
    updated = copy.deepcopy(config_dict)
    for dotted_path, value in overrides.items():
        if value is not None:
            _set_path(updated, dotted_path, value)
    return updated


def read_config_file(config_path) -> dict:
    try:
        return json_util.read_file(config_path, raise_errors=True)
    except FileNotFoundError as err:
        raise errors.ConfigError(str(config_path), "config file not found") from err
    except (json.JSONDecodeError, UnicodeDecodeError) as err:
        raise errors.ConfigError(str(config_path), f"invalid JSON: {err}") from err


def load_experiment_config(config_path=constants.DEFAULT_EXPERIMENT_FILE, overrides=None) -> ExperimentConfig:
    """
    Reads, overrides then validates an experiment config file. The default output directory
    is named after the config file under the output root.
    """
    config_dict = apply_overrides(read_config_file(config_path), overrides or {})
    default_output_dir = os.path.join(constants.OUTPUT_ROOT, pathlib.Path(config_path).stem)
    return ExperimentConfig.from_dict(config_dict, default_output_dir)


def write_config_snapshot(experiment_config: ExperimentConfig, output_dir=None) -> str:
    output_dir = output_dir or experiment_config.output_dir
    snapshot_path = os.path.join(output_dir, constants.CONFIG_SNAPSHOT_FILE)
    try:
        os.makedirs(output_dir, exist_ok=True)
        with open(snapshot_path, "w", encoding="utf-8") as snapshot_file:
            json.dump(experiment_config.to_dict(), snapshot_file, indent=4, sort_keys=True)
    except OSError as err:
        raise errors.ConfigError(
            enums.ExperimentConfigKeys.OUTPUT_DIR.value, f"cannot write {snapshot_path} ({err.strerror or err})"
        ) from err
    logging.get_logger(EXPERIMENT_CONFIG_LOGGER_NAME).debug(f"Config snapshot written to {snapshot_path}")
    return snapshot_path

