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
import enum


class Primitive(enum.Enum):
    LEAF = "leaf"
    ADD = "add"
    SUBTRACT = "subtract"
    MULTIPLY = "multiply"
    DIVIDE = "divide"
    MATMUL = "matmul"
    RELU = "relu"
    HINGE = "hinge"
    SQUARE = "square"
    SQRT = "sqrt"
    ABSOLUTE = "absolute"
    SUM = "sum"
    MEAN = "mean"
    L2_NORM = "l2_norm"
    BROADCAST = "broadcast"
    RESHAPE = "reshape"
    TAKE_ROWS = "take_rows"
    CONV2D = "conv2d"


class InputKind(enum.Enum):
    VECTOR = "vector"
    GRID = "grid"


class LayerKind(enum.Enum):
    AFFINE = "affine"
    CONV = "conv"
    GLOBAL_AVERAGE_POOL = "global_average_pool"


class DistillationMode(enum.Enum):
    BASELINE = "baseline"
    ABSOLUTE = "distill_abs"
    RELATIVE = "distill_rel"


class DegradationKind(enum.Enum):
    LOW_RESOLUTION = "lowres"
    NOISE = "noise"
    MASK = "mask"


class DatasetKind(enum.Enum):
    SYNTHETIC = "synthetic"
    SYNTHETIC_GRID = "synthetic_grid"
    CSV = "csv"


class DatasetPartition(enum.Enum):
    TRAIN = "train"
    VALIDATION = "validation"
    TEST = "test"


class ExperimentConfigKeys(enum.Enum):
    DATASET = "dataset"
    TEACHER = "teacher"
    STUDENT = "student"
    TRAINING = "training"
    EVALUATION = "evaluation"
    OUTPUT_DIR = "output_dir"


class DatasetConfigKeys(enum.Enum):
    KIND = "kind"
    PATH = "path"
    NUM_CLASSES = "num_classes"
    PER_CLASS = "per_class"
    INPUT_DIM = "input_dim"
    HEIGHT = "height"
    WIDTH = "width"
    CHANNELS = "channels"
    INTRA_STD = "intra_std"
    INTER_SCALE = "inter_scale"
    SEED = "seed"
    VALIDATION_FRACTION = "validation_fraction"


class NetConfigKeys(enum.Enum):
    INPUT_KIND = "input_kind"
    INPUT_SHAPE = "input_shape"
    LAYERS = "layers"
    EMBEDDING_DIM = "embedding_dim"
    TAPS = "taps"
    NORMALIZE_EMBEDDINGS = "normalize_embeddings"
    LAYER_KIND = "kind"
    LAYER_SIZE = "size"
    LAYER_STRIDE = "stride"
    LAYER_NAME = "name"


class TrainingConfigKeys(enum.Enum):
    MODE = "mode"
    USE_HINT = "use_hint"
    USE_ATTENTION = "use_attention"
    MARGIN = "margin"
    LAMBDA = "lambda"
    MU = "mu"
    KAPPA = "kappa"
    LR = "lr"
    ADAM_BETA1 = "adam_beta1"
    ADAM_BETA2 = "adam_beta2"
    ADAM_EPS = "adam_eps"
    BATCH_SIZE = "batch_size"
    CLASSES_PER_BATCH = "classes_per_batch"
    EPOCHS = "epochs"
    SEEDS = "seeds"
    TAP_PAIRS = "tap_pairs"
    SQUARED_DISTANCES = "squared_distances"
    SEMI = "semi"
    LABELED_FRACTION = "labeled_fraction"
    USE_UNLABELED = "use_unlabeled"
    KD_ONLY = "kd_only"
    CROSS_QUALITY = "cross_quality"
    DEGRADATION_KIND = "kind"
    DEGRADATION_FACTOR = "factor"
    DEGRADATION_SIGMA = "sigma"
    DEGRADATION_FRACTION = "fraction"
    DEGRADATION_SEED = "seed"


class EvaluationConfigKeys(enum.Enum):
    K_VALUES = "k_values"
