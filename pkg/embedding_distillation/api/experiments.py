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
import typing

import embedding_distillation.enums as enums
import embedding_distillation.model as model
import embedding_distillation.data as data
import embedding_distillation.evaluation as evaluation
import embedding_distillation.trainer as trainer
import embedding_distillation.experiment_config as experiment_config


def load_experiment(config_path, overrides: typing.Optional[dict] = None) -> experiment_config.ExperimentConfig:
    return experiment_config.load_experiment_config(config_path, overrides)


def write_config_snapshot(experiment: experiment_config.ExperimentConfig, output_dir=None) -> str:
    return experiment_config.write_config_snapshot(experiment, output_dir)


def load_dataset(experiment: experiment_config.ExperimentConfig) -> data.Dataset:
    return experiment.dataset.load()


def load_csv_dataset(path) -> data.Dataset:
    return data.evaluation_only_split(data.load_csv_dataset(path))


def train_teacher(experiment: experiment_config.ExperimentConfig, dataset: data.Dataset, seed,
                  metrics_path=None) -> trainer.TrainingResult:
    return trainer.train_teacher(dataset, experiment.teacher, experiment.train_config(seed), metrics_path)


def distill_student(experiment: experiment_config.ExperimentConfig, dataset: data.Dataset,
                    teacher: typing.Optional[model.EmbeddingNet], seed, metrics_path=None) -> trainer.TrainingResult:
    return trainer.distill_student(teacher, dataset, experiment.student, experiment.train_config(seed), metrics_path)


def evaluate_net(net: model.EmbeddingNet, dataset: data.Dataset, k_values,
                 partition: enums.DatasetPartition = enums.DatasetPartition.TEST) -> evaluation.RetrievalReport:
    indices = dataset.partition(partition)
    embeddings = model.embed_array(net, dataset.inputs[indices])
    return evaluation.recall_at_k(embeddings, dataset.labels[indices], k_values)


def save_net(net: model.EmbeddingNet, path):
    model.save_checkpoint(net, path)


def load_net(path, expected_config: typing.Optional[model.NetConfig] = None) -> model.EmbeddingNet:
    return model.load_checkpoint(path, expected_config)


def get_net_digest(net: model.EmbeddingNet) -> str:
    return model.params_digest(net)


def export_embeddings(net: model.EmbeddingNet, dataset: data.Dataset, path,
                      partition: enums.DatasetPartition = enums.DatasetPartition.TEST) -> int:
    return evaluation.export_embeddings(net, dataset, partition, path)
