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
import math
import time
import typing

import numpy as np

import octobot_commons.data_util as data_util
import octobot_commons.logging as logging

import embedding_distillation.enums as enums
import embedding_distillation.errors as errors
import embedding_distillation.model as model
import embedding_distillation.data as data
import embedding_distillation.sampling as sampling
import embedding_distillation.evaluation as evaluation
import embedding_distillation.trainer.optimizer as optimizer
import embedding_distillation.trainer.train_config as train_config
import embedding_distillation.trainer.steps as steps
import embedding_distillation.trainer.metrics_log as metrics_log


@dataclasses.dataclass
class TrainingResult:
    net: model.EmbeddingNet
    best_net: model.EmbeddingNet
    best_epoch: int
    metrics: list
    steps: int
    routing_audit: steps.RoutingAudit
    # inputs the trained net was evaluated on, degraded in cross quality runs
    eval_dataset: typing.Optional[data.Dataset] = None


def validation_recall_at_1(net: model.EmbeddingNet, dataset: data.Dataset) -> typing.Optional[float]:
    """
    Recall@1 over the validation classes holding at least 2 validation samples,
    None when fewer than 2 such classes remain
    """
    indices = dataset.partition(enums.DatasetPartition.VALIDATION)
    labels = dataset.labels[indices]
    classes, counts = np.unique(labels, return_counts=True)
    kept_classes = classes[counts >= 2]
    if len(kept_classes) < 2:
        return None
    indices = indices[np.isin(labels, kept_classes)]
    embeddings = model.embed_array(net, dataset.inputs[indices])
    return evaluation.recall_at_k(embeddings, dataset.labels[indices], (1,)).recall(1)


class EmbeddingTrainer:
    """
    Runs the sequential optimization loop shared by teacher training and student distillation.
    A step draws its batches from a numpy Generator seeded by the run seed, which makes the whole
    run deterministic for a given (config, seed, dataset).
    """

    def __init__(self, dataset: data.Dataset, config: train_config.TrainConfig,
                 teacher: typing.Optional[model.EmbeddingNet] = None, metrics_path=None):
        self.logger = logging.get_logger(self.get_name())
        if dataset.split is None:
            raise errors.DatasetError(f"{dataset.name}: training requires a class disjoint split")
        if config.needs_teacher and teacher is None:
            raise errors.MissingTeacherError(f"{config.mode.value} training requires a teacher network")
        self.dataset = dataset
        self.config = config
        self.teacher = teacher if config.needs_teacher else None
        self.metrics_path = metrics_path
        self.routing_audit = steps.RoutingAudit()
        self.rng = np.random.default_rng(config.seed)
        self.student_dataset = dataset
        self.views = steps.InputViews.shared(dataset.inputs)
        if config.cross_quality is not None:
            self.student_dataset = data.degraded_view(dataset, config.cross_quality, config.seed)
            self.views = steps.InputViews(
                self.student_dataset.inputs, dataset.inputs, steps.DEGRADED_VIEW, steps.CLEAN_VIEW
            )
        train_indices = dataset.partition(enums.DatasetPartition.TRAIN)
        self.train_indices = train_indices
        self.labeled_indices, self.unlabeled_indices = train_indices, np.zeros(0, dtype=np.int64)
        if config.semi is not None:
            self.labeled_indices, self.unlabeled_indices = data.split_labeled(
                train_indices, dataset.labels, config.semi.labeled_fraction, config.seed
            )
        self.steps_per_epoch = math.ceil(len(train_indices) / config.batch_size)
        self.step_count = 0

    @classmethod
    def get_name(cls):
        return cls.__name__

    def _labeled_batch(self):
        return sampling.make_batch(
            self.labeled_indices, self.dataset.labels, self.config.batch_size,
            self.config.classes_per_batch, self.rng
        )

    def _semi_step(self, net):
        semi = self.config.semi
        labeled_batch = None if semi.kd_only else self._labeled_batch()
        unlabeled_batch = None
        if semi.kd_only:
            # labels are ignored, every training sample is unlabeled
            unlabeled_batch = sampling.sample_unlabeled_batch(self.train_indices, self.config.batch_size, self.rng)
        elif semi.use_unlabeled and len(self.unlabeled_indices) >= 2:
            unlabeled_batch = sampling.sample_unlabeled_batch(
                self.unlabeled_indices, self.config.batch_size, self.rng
            )
        return steps.semi_supervised_step(
            net, self.teacher, labeled_batch, unlabeled_batch, self.views, self.config,
            step=self.step_count, audit=self.routing_audit,
        )

    def _step(self, net):
        if self.config.semi is not None:
            return self._semi_step(net)
        batch = self._labeled_batch()
        if self.config.cross_quality is not None and self.teacher is not None:
            indices = batch.sample_indices
            return steps.cross_quality_step(
                net, self.teacher, self.views.teacher_inputs[indices], self.views.student_inputs[indices],
                batch.labels, self.config, step=self.step_count, audit=self.routing_audit,
            )
        return steps.distillation_step(
            net, self.teacher, batch, self.views, self.config, step=self.step_count, audit=self.routing_audit
        )

    def _run_epoch(self, net, state):
        step_values = []
        for _ in range(self.steps_per_epoch):
            result = self._step(net)
            self.step_count += 1
            new_params, state = optimizer.adam_step(
                net.parameter_arrays(), result.gradients, state, self.config.lr,
                self.config.adam_beta1, self.config.adam_beta2, self.config.adam_eps,
            )
            net = net.with_params(new_params)
            step_values.append(result.values())
        return net, state, {
            key: data_util.mean([values[key] for values in step_values])
            for key in step_values[0]
        }

    def train(self, net: model.EmbeddingNet) -> TrainingResult:
        state = optimizer.OptimizerState.zeros_like(net.parameter_arrays())
        best_net, best_epoch, best_recall = net, 0, None
        with metrics_log.MetricsLog(self.metrics_path) as log:
            for epoch in range(1, self.config.epochs + 1):
                started_at = time.perf_counter()
                net, state, losses = self._run_epoch(net, state)
                recall = validation_recall_at_1(net, self.student_dataset)
                log.append(metrics_log.EpochMetrics(
                    epoch, losses["loss_total"], losses["loss_ml"], losses["loss_kd"], losses["loss_hint"],
                    losses["loss_at"], recall, (time.perf_counter() - started_at) * 1000,
                ))
                if recall is not None and (best_recall is None or recall > best_recall):
                    best_net, best_epoch, best_recall = net, epoch, recall
                self.logger.info(
                    f"[{self.config.mode.value}] epoch {epoch}/{self.config.epochs}: "
                    f"loss {losses['loss_total']:.6f}, validation R@1 "
                    f"{'n/a' if recall is None else f'{recall:.4f}'}"
                )
            if best_recall is None:
                best_net, best_epoch = net, self.config.epochs
        return TrainingResult(
            net, best_net, best_epoch, log.records, self.step_count, self.routing_audit, self.student_dataset
        )


def train_teacher(dataset: data.Dataset, net_config: model.NetConfig, config: train_config.TrainConfig,
                  metrics_path=None) -> TrainingResult:
    """
    Metric learning only training, any distillation setting of config is ignored
    """
    config = config.as_baseline().replace(cross_quality=None)
    return EmbeddingTrainer(dataset, config, metrics_path=metrics_path).train(
        model.init_params(net_config, config.seed)
    )


def distill_student(teacher: typing.Optional[model.EmbeddingNet], dataset: data.Dataset,
                    student_config: model.NetConfig, config: train_config.TrainConfig,
                    metrics_path=None) -> TrainingResult:
    """
    Trains a student under the frozen teacher. A baseline config trains the student alone,
    which is the reference a distilled student is compared with.
    """
    trainer_logger = logging.get_logger(EmbeddingTrainer.get_name())
    if config.needs_teacher:
        if teacher is None:
            raise errors.MissingTeacherError(f"{config.mode.value} distillation requires a teacher network")
        steps.check_embedding_dims(student_config, teacher.config, config)
        steps.check_tap_pairs(student_config, teacher.config, config)
    student = model.init_params(student_config, config.seed)
    teacher_digest = None
    if teacher is not None:
        teacher_digest = model.params_digest(teacher)
        trainer_logger.info(
            f"Distilling a {model.count_parameters(teacher)} parameters teacher into a "
            f"{model.count_parameters(student)} parameters student "
            f"(capacity ratio {model.count_parameters(teacher) / model.count_parameters(student):.1f})"
        )
    result = EmbeddingTrainer(dataset, config, teacher=teacher, metrics_path=metrics_path).train(student)
    if teacher is not None and model.params_digest(teacher) != teacher_digest:
        raise errors.GradientError("teacher parameters changed during distillation")
    return result
