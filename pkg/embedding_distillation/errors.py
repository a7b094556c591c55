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


class EmbeddingDistillationError(Exception):
    pass


class TensorShapeError(EmbeddingDistillationError):
    pass


class TensorDomainError(EmbeddingDistillationError):
    pass


class GradientError(EmbeddingDistillationError):
    pass


class NonFiniteGradientError(GradientError):
    def __init__(self, step, parameter_name):
        super().__init__(f"Non-finite gradient for parameter '{parameter_name}' at step {step}")
        self.step = step
        self.parameter_name = parameter_name


class NetConfigError(EmbeddingDistillationError):
    pass


class CheckpointError(EmbeddingDistillationError):
    pass


class CheckpointVersionError(CheckpointError):
    pass


class CorruptedCheckpointError(CheckpointError):
    pass


class MissingParameterError(CheckpointError):
    pass


class CheckpointConfigMismatchError(CheckpointError):
    def __init__(self, message, loaded_config):
        super().__init__(message)
        self.loaded_config = loaded_config


class LossInputError(EmbeddingDistillationError):
    pass


class MissingTeacherError(LossInputError):
    pass


class AttentionMapError(LossInputError):
    pass


class SamplingError(EmbeddingDistillationError):
    pass


class InfeasibleBatchError(SamplingError):
    pass


class TrainConfigError(EmbeddingDistillationError):
    pass


class DatasetError(EmbeddingDistillationError):
    pass


class DatasetFormatError(DatasetError):
    pass


class DegradationError(DatasetError):
    pass


class RetrievalError(EmbeddingDistillationError):
    pass


class EmbeddingFileError(EmbeddingDistillationError):
    pass


class OutputFileError(EmbeddingDistillationError):
    pass


class ConfigError(EmbeddingDistillationError):
    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field
