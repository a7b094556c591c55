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
import typing

import numpy as np

import embedding_distillation.enums as enums
import embedding_distillation.errors as errors
import embedding_distillation.core as core
import embedding_distillation.model as model
import embedding_distillation.loss as loss
import embedding_distillation.sampling as sampling
import embedding_distillation.trainer.train_config as train_config

CLEAN_VIEW = "clean"
DEGRADED_VIEW = "degraded"
STUDENT_NETWORK = "student"
TEACHER_NETWORK = "teacher"


@dataclasses.dataclass(frozen=True)
class InputViews:
    """
    Student and teacher inputs of the whole dataset, aligned by dataset index
    """
    student_inputs: np.ndarray
    teacher_inputs: np.ndarray
    student_view: str = CLEAN_VIEW
    teacher_view: str = CLEAN_VIEW

    @classmethod
    def shared(cls, inputs):
        return cls(inputs, inputs)


@dataclasses.dataclass(frozen=True)
class RoutingEntry:
    step: int
    network: str
    view: str


class RoutingAudit:
    def __init__(self):
        self.entries: list[RoutingEntry] = []

    def record(self, step, network, view):
        self.entries.append(RoutingEntry(step, network, view))

    def views_of(self, network) -> set:
        return {entry.view for entry in self.entries if entry.network == network}


@dataclasses.dataclass
class StepResult:
    terms: loss.LossTerms
    # student parameter name -> gradient array
    gradients: dict

    def values(self) -> dict:
        return self.terms.values()


def _tap_shape_for(config: model.NetConfig, tap_name):
    return dict(zip(config.layer_names, config.layer_output_shapes()))[tap_name]


def _attention_map_shape(per_sample_shape) -> tuple:
    return (1, per_sample_shape[0]) if len(per_sample_shape) == 1 else tuple(per_sample_shape[1:])


def check_tap_pairs(student_config: model.NetConfig, teacher_config: model.NetConfig,
                    config: train_config.TrainConfig):
    """
    Raises TrainConfigError naming the first (teacher tap, student tap) pair the active
    hint or attention term can't compare
    """
    if not (config.use_hint or config.use_attention):
        return
    for teacher_tap, student_tap in config.tap_pairs:
        pair = f"({teacher_tap}, {student_tap})"
        if teacher_tap not in teacher_config.taps or student_tap not in student_config.taps:
            raise errors.TrainConfigError(
                f"tap pair {pair}: teacher taps are {list(teacher_config.taps)}, "
                f"student taps are {list(student_config.taps)}"
            )
        teacher_shape = _tap_shape_for(teacher_config, teacher_tap)
        student_shape = _tap_shape_for(student_config, student_tap)
        if config.use_hint and teacher_shape != student_shape:
            raise errors.TrainConfigError(
                f"tap pair {pair}: hint loss needs identical activation shapes, "
                f"got teacher {teacher_shape} and student {student_shape}"
            )
        if config.use_attention and _attention_map_shape(teacher_shape) != _attention_map_shape(student_shape):
            raise errors.TrainConfigError(
                f"tap pair {pair}: attention loss needs identical spatial shapes, got teacher "
                f"{_attention_map_shape(teacher_shape)} and student {_attention_map_shape(student_shape)}"
            )


def check_embedding_dims(student_config: model.NetConfig, teacher_config: model.NetConfig,
                         config: train_config.TrainConfig):
    """
    The absolute teacher loss compares embeddings coordinate by coordinate
    """
    if config.mode is enums.DistillationMode.ABSOLUTE and config.weights.lambda_ > 0 and \
            student_config.embedding_dim != teacher_config.embedding_dim:
        raise errors.TrainConfigError(
            f"{config.mode.value} needs identical embedding dimensions, got teacher "
            f"{teacher_config.embedding_dim} and student {student_config.embedding_dim}"
        )


def _paired_taps(student_taps, teacher_taps, config) -> list:
    if not (config.use_hint or config.use_attention):
        return []
    student_by_name = {tap.name: tap for tap in student_taps}
    teacher_by_name = {tap.name: tap for tap in teacher_taps}
    return [
        (student_by_name[student_tap], teacher_by_name.get(teacher_tap))
        for teacher_tap, student_tap in config.tap_pairs
    ]


def _batch_terms(student, student_params, teacher, student_inputs, teacher_inputs, labels,
                 config: train_config.TrainConfig, include_ml) -> loss.LossTerms:
    student_embeddings, student_taps = model.embed(student, student_inputs, student_params)
    teacher_embeddings, teacher_taps = None, []
    if config.needs_teacher:
        if teacher is None:
            raise errors.MissingTeacherError(f"{config.mode.value} training requires a teacher network")
        # frozen teacher: nothing it computes is recorded
        with core.no_tape():
            teacher_embeddings, teacher_taps = model.embed(teacher, teacher_inputs)
    triplets = ()
    if include_ml:
        triplets = sampling.build_triplet_batch(np.arange(len(labels)), student_embeddings, labels).triplets
    pairs = ()
    if config.mode is enums.DistillationMode.RELATIVE:
        pairs = sampling.enumerate_pairs(student_embeddings.shape[0])
    context = loss.BatchContext(
        student_embeddings,
        triplets=triplets,
        pairs=pairs,
        teacher_embeddings=teacher_embeddings,
        tap_pairs=_paired_taps(student_taps, teacher_taps, config),
    )
    return loss.total_loss(
        context, config.weights, config.mode,
        use_hint=config.use_hint,
        use_attention=config.use_attention,
        squared=config.squared_distances,
        include_ml=include_ml,
    )


def _gradients(tape, bound_params, total) -> dict:
    if not tape.is_recorded(total):
        # constant loss, for instance a hinge inactive on every triplet
        return {name: np.zeros(value.shape, dtype=np.float64) for name, value in bound_params.items()}
    leaf_gradients = core.backward(tape, total)
    return {name: leaf_gradients[value.node_id].data for name, value in bound_params.items()}


def _sum_terms(first: loss.LossTerms, second: loss.LossTerms) -> loss.LossTerms:
    return loss.LossTerms(
        first.total + second.total,
        first.ml + second.ml,
        first.kd + second.kd,
        first.hint + second.hint,
        first.at + second.at,
    )


def _audit(audit, step, views: InputViews, teacher_used):
    if audit is None:
        return
    audit.record(step, STUDENT_NETWORK, views.student_view)
    if teacher_used:
        audit.record(step, TEACHER_NETWORK, views.teacher_view)


def distillation_step(student: model.EmbeddingNet, teacher: typing.Optional[model.EmbeddingNet],
                      batch: sampling.LabeledBatch, views: InputViews, config: train_config.TrainConfig,
                      step: int = 0, audit: typing.Optional[RoutingAudit] = None) -> StepResult:
    """
    One labeled step: forward the frozen teacher, forward the student, mine triplets on the student
    embeddings and differentiate the total loss with respect to the student parameters only.
    Baseline mode runs without a teacher.
    """
    indices = batch.sample_indices
    with core.Tape() as tape:
        bound = student.bind(tape)
        terms = _batch_terms(
            student, bound, teacher, views.student_inputs[indices], views.teacher_inputs[indices],
            batch.labels, config, include_ml=not config.kd_only,
        )
    _audit(audit, step, views, config.needs_teacher)
    return StepResult(terms, _gradients(tape, bound, terms.total))


def semi_supervised_step(student: model.EmbeddingNet, teacher: model.EmbeddingNet,
                         labeled_batch: typing.Optional[sampling.LabeledBatch],
                         unlabeled_batch: typing.Optional[sampling.UnlabeledBatch],
                         views: InputViews, config: train_config.TrainConfig,
                         step: int = 0, audit: typing.Optional[RoutingAudit] = None) -> StepResult:
    """
    (L_ml + lambda * L_kd) on the labeled batch plus lambda * L_kd on the unlabeled batch.
    kd_only drops the labeled metric learning term. The unlabeled batch carries no label.
    """
    if config.mode is enums.DistillationMode.BASELINE:
        raise errors.TrainConfigError("semi supervised steps require a distillation mode")
    if labeled_batch is None and unlabeled_batch is None:
        raise errors.SamplingError("semi_supervised_step: no labeled nor unlabeled batch")
    with core.Tape() as tape:
        bound = student.bind(tape)
        terms = None
        if labeled_batch is not None:
            indices = labeled_batch.sample_indices
            terms = _batch_terms(
                student, bound, teacher, views.student_inputs[indices], views.teacher_inputs[indices],
                labeled_batch.labels, config, include_ml=not config.kd_only,
            )
        if unlabeled_batch is not None:
            indices = unlabeled_batch.sample_indices
            unlabeled_terms = _batch_terms(
                student, bound, teacher, views.student_inputs[indices], views.teacher_inputs[indices],
                None, config, include_ml=False,
            )
            terms = unlabeled_terms if terms is None else _sum_terms(terms, unlabeled_terms)
    _audit(audit, step, views, True)
    return StepResult(terms, _gradients(tape, bound, terms.total))


def cross_quality_step(student: model.EmbeddingNet, teacher: model.EmbeddingNet,
                       clean_batch, degraded_batch, labels, config: train_config.TrainConfig,
                       step: int = 0, audit: typing.Optional[RoutingAudit] = None) -> StepResult:
    """
    Same objective as distillation_step, the teacher reading clean_batch while the student reads
    degraded_batch, both aligned sample by sample
    """
    clean_batch = np.asarray(clean_batch, dtype=np.float64)
    degraded_batch = np.asarray(degraded_batch, dtype=np.float64)
    if len(clean_batch) != len(degraded_batch) or len(clean_batch) != len(labels):
        raise errors.SamplingError(
            f"cross_quality_step: {len(clean_batch)} clean samples, {len(degraded_batch)} degraded samples "
            f"and {len(labels)} labels"
        )
    views = InputViews(degraded_batch, clean_batch, DEGRADED_VIEW, CLEAN_VIEW)
    return distillation_step(
        student, teacher, sampling.LabeledBatch(np.arange(len(labels)), np.asarray(labels)),
        views, config, step=step, audit=audit,
    )
