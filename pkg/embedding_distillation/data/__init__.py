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

from embedding_distillation.data import dataset
from embedding_distillation.data import synthetic
from embedding_distillation.data import splits
from embedding_distillation.data import degradation
from embedding_distillation.data import csv_io

from embedding_distillation.data.dataset import (
    DatasetSplit,
    Dataset,
)
from embedding_distillation.data.synthetic import (
    gen_synthetic_clusters,
    gen_synthetic_grids,
)
from embedding_distillation.data.splits import (
    split_classes_half,
    split_labeled,
    evaluation_only_split,
)
from embedding_distillation.data.degradation import (
    DegradationSpec,
    degrade,
    degraded_view,
)
from embedding_distillation.data.csv_io import (
    load_csv_dataset,
    export_csv_dataset,
)

__all__ = [
    "DatasetSplit",
    "Dataset",
    "gen_synthetic_clusters",
    "gen_synthetic_grids",
    "split_classes_half",
    "split_labeled",
    "evaluation_only_split",
    "DegradationSpec",
    "degrade",
    "degraded_view",
    "load_csv_dataset",
    "export_csv_dataset",
]
