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
import os
import pathlib
import dotenv

import octobot_commons.os_util as os_util

# make constants visible
from embedding_distillation import (
    PROJECT_NAME,
    AUTHOR,
    VERSION,
    LONG_VERSION,
)

# load environment variables from .env file if exists
DOTENV_PATH = os.getenv("DOTENV_PATH", os.path.curdir)
dotenv.load_dotenv(os.path.join(DOTENV_PATH, ".env"), verbose=False)

# output
OUTPUT_ROOT = os.getenv("EMBEDDING_DISTILLATION_OUTPUT_ROOT", "output")
TEACHER_CHECKPOINT_FILE = "teacher.mdck"
STUDENT_CHECKPOINT_FILE = "student.mdck"
METRICS_LOG_FILE = "metrics.jsonl"
CONFIG_SNAPSHOT_FILE = "config_snapshot.json"
REPORT_FILE = "report.jsonl"
SWEEP_TABLE_FILE = "lambda_sweep.jsonl"
EMBEDDINGS_FILE = "embeddings.mdeb"

# logging
LOGS_FOLDER = os.getenv("EMBEDDING_DISTILLATION_LOGS_FOLDER", "logs")
FORCED_LOG_LEVEL = os.getenv("EMBEDDING_DISTILLATION_LOG_LEVEL", "")
ENABLE_FILE_LOGS = os_util.parse_boolean_environment_var("EMBEDDING_DISTILLATION_ENABLE_FILE_LOGS", "true")

# config files
CONFIG_FOLDER = pathlib.Path(__file__).parent / "config"
LOGGING_CONFIG_FILE = str(CONFIG_FOLDER / "logging_config.ini")
DEFAULT_EXPERIMENT_FILE = str(CONFIG_FOLDER / "default_experiment.json")
EXPERIMENT_SCHEMA_FILE = str(CONFIG_FOLDER / "experiment_schema.json")

# numerics
DISTANCE_EPSILON = 1e-12
GRAD_CHECK_EPSILON = 1e-5
GRAD_CHECK_DENOMINATOR_FLOOR = 1e-8
GRAD_CHECK_TOLERANCE = 1e-4
GRAD_CHECK_POINTS = 50
RELU_KINK_NUDGE = 1e-3

# model
DEFAULT_EMBEDDING_DIM = 512
CONV_KERNEL_SIZE = 3
CONV_PADDING = 1
ALLOWED_CONV_STRIDES = (1, 2)
DEFAULT_TEACHER_HIDDEN_WIDTHS = (256, 256, 256)
DEFAULT_STUDENT_HIDDEN_WIDTHS = (16,)
EMBEDDING_LAYER_NAME = "embedding"

# checkpoint file
CHECKPOINT_MAGIC = b"MDCK"
CHECKPOINT_VERSION = 1

# embeddings file
EMBEDDINGS_MAGIC = b"MDEB"
EMBEDDINGS_VERSION = 1
EMBED_CHUNK_SIZE = 256

# losses
DEFAULT_MARGIN = 0.2
DEFAULT_LAMBDA_RELATIVE = 100.0
DEFAULT_LAMBDA_ABSOLUTE = 10.0
DEFAULT_MU = 0.0
DEFAULT_KAPPA = 0.0

# training
DEFAULT_LEARNING_RATE = 1e-5
DEFAULT_ADAM_BETA1 = 0.9
DEFAULT_ADAM_BETA2 = 0.999
DEFAULT_ADAM_EPS = 1e-8
DEFAULT_BATCH_SIZE = 32
DEFAULT_CLASSES_PER_BATCH = 8
DEFAULT_EPOCHS = 200
DEFAULT_SEEDS = (0, 1, 2)
DEFAULT_LABELED_FRACTION = 0.5

# relative embedding fitting
DEFAULT_FIT_STEPS = 4000
DEFAULT_FIT_LEARNING_RATE = 0.05
DEFAULT_FIT_PATIENCE = 100
MIN_FIT_LEARNING_RATE = 1e-7

# data
DEFAULT_NUM_CLASSES = 20
DEFAULT_PER_CLASS = 50
DEFAULT_INPUT_DIM = 32
DEFAULT_INTRA_STD = 0.5
DEFAULT_INTER_SCALE = 5.0
DEFAULT_GRID_SIZE = 8
DEFAULT_VALIDATION_FRACTION = 0.2
CSV_HEADER_PREFIX = "#"
CSV_SEPARATOR = ","

# evaluation
DEFAULT_K_VALUES = (1, 2, 4, 8, 16)

# sweep
DEFAULT_SWEEP_LAMBDAS = (1.0, 10.0, 50.0, 100.0, 200.0)
DEFAULT_JOBS = int(os.getenv("EMBEDDING_DISTILLATION_DEFAULT_JOBS", "1"))

# cli
EXIT_SUCCESS = 0
EXIT_CONFIG_ERROR = 2
EXIT_NUMERIC_ERROR = 3
MIN_NUMPY_VERSION = "1.22.0"
