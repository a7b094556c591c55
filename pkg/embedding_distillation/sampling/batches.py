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

import numpy as np

import embedding_distillation.constants as constants
import embedding_distillation.errors as errors


@dataclasses.dataclass(frozen=True)
class LabeledBatch:
    sample_indices: np.ndarray
    labels: np.ndarray


@dataclasses.dataclass(frozen=True)
class UnlabeledBatch:
    # no labels on purpose: label free code paths can't read them
    sample_indices: np.ndarray


def _members_by_class(indices, labels) -> dict:
    indices = np.sort(np.asarray(indices, dtype=np.int64))
    labels = np.asarray(labels)
    return {
        label: indices[labels[indices] == label]
        for label in np.unique(labels[indices])
    }


def make_batch(indices, labels, batch_size=constants.DEFAULT_BATCH_SIZE,
               classes_per_batch=constants.DEFAULT_CLASSES_PER_BATCH, rng=None) -> LabeledBatch:
    """
    Class balanced batch: classes_per_batch distinct classes contributing batch_size // classes_per_batch
    samples each, the remainder going one by one to the first drawn classes that can afford it.
    :param indices: dataset indices to draw from
    :param labels: labels of the whole dataset, indexed by dataset index
    :param rng: numpy Generator, the only source of randomness
    """
    rng = np.random.default_rng() if rng is None else rng
    members = _members_by_class(indices, labels)
    per_class, remainder = divmod(batch_size, classes_per_batch) if classes_per_batch > 0 else (0, 0)
    if classes_per_batch < 2 or per_class < 2:
        raise errors.InfeasibleBatchError(
            f"make_batch: {classes_per_batch} classes per batch of {batch_size} can't give every class "
            f"2 samples and a negative class"
        )
    eligible = [label for label, class_members in members.items() if len(class_members) >= per_class]
    if len(eligible) < classes_per_batch:
        raise errors.InfeasibleBatchError(
            f"make_batch: a batch of {batch_size} over {classes_per_batch} classes needs {per_class} samples "
            f"of each class (batch_size // classes_per_batch), only {len(eligible)} of {len(members)} classes "
            f"hold {per_class} samples or more. Lower batch_size or classes_per_batch."
        )
    chosen = [eligible[position] for position in rng.choice(len(eligible), classes_per_batch, replace=False)]
    counts = [per_class] * classes_per_batch
    for position, label in enumerate(chosen):
        if remainder == 0:
            break
        if len(members[label]) > per_class:
            counts[position] += 1
            remainder -= 1
    if remainder:
        raise errors.InfeasibleBatchError(
            f"make_batch: {remainder} of the batch_size % classes_per_batch extra samples are left over, they "
            f"require classes holding more than {per_class} samples. Use a batch_size multiple of "
            f"classes_per_batch."
        )
    sample_indices = np.concatenate([
        rng.choice(members[label], count, replace=False)
        for label, count in zip(chosen, counts)
    ])
    return LabeledBatch(sample_indices, np.asarray(labels)[sample_indices])


def sample_unlabeled_batch(indices, batch_size=constants.DEFAULT_BATCH_SIZE, rng=None) -> UnlabeledBatch:
    """
    Uniform draw without replacement, the whole pool when it is smaller than batch_size
    """
    rng = np.random.default_rng() if rng is None else rng
    indices = np.asarray(indices, dtype=np.int64)
    if len(indices) < 2:
        raise errors.SamplingError(f"sample_unlabeled_batch: {len(indices)} sample(s) can't form a pair")
    return UnlabeledBatch(rng.choice(indices, min(batch_size, len(indices)), replace=False))
