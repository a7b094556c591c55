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

from embedding_distillation.evaluation import report
from embedding_distillation.evaluation import retrieval
from embedding_distillation.evaluation import embeddings_file

from embedding_distillation.evaluation.report import (
    RetrievalReport,
    average_reports,
)
from embedding_distillation.evaluation.retrieval import (
    pairwise_distances,
    recall_at_k,
)
from embedding_distillation.evaluation.embeddings_file import (
    write_embeddings,
    load_embeddings,
    export_embeddings,
)

__all__ = [
    "RetrievalReport",
    "average_reports",
    "pairwise_distances",
    "recall_at_k",
    "write_embeddings",
    "load_embeddings",
    "export_embeddings",
]
