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
import embedding_distillation.constants as constants
import embedding_distillation.enums as enums
import embedding_distillation.model.net_config as net_config


def vector_net_config(input_dim, hidden_widths, embedding_dim=constants.DEFAULT_EMBEDDING_DIM, taps=()):
    layers = [
        net_config.LayerSpec(enums.LayerKind.AFFINE, width, name=f"hidden_{index}")
        for index, width in enumerate(hidden_widths)
    ]
    layers.append(net_config.LayerSpec(enums.LayerKind.AFFINE, embedding_dim, name=constants.EMBEDDING_LAYER_NAME))
    return net_config.NetConfig(enums.InputKind.VECTOR, (input_dim,), tuple(layers), embedding_dim, tuple(taps))


def default_teacher_config(input_dim, embedding_dim=constants.DEFAULT_EMBEDDING_DIM, taps=()):
    return vector_net_config(input_dim, constants.DEFAULT_TEACHER_HIDDEN_WIDTHS, embedding_dim, taps)


def default_student_config(input_dim, embedding_dim=constants.DEFAULT_EMBEDDING_DIM, taps=()):
    return vector_net_config(input_dim, constants.DEFAULT_STUDENT_HIDDEN_WIDTHS, embedding_dim, taps)


def grid_net_config(height, width, channels, conv_channels, embedding_dim=constants.DEFAULT_EMBEDDING_DIM,
                    taps=()):
    """
    stride 1 conv blocks keep the spatial size, so any pair of blocks can be compared by attention losses
    """
    layers = [
        net_config.LayerSpec(enums.LayerKind.CONV, out_channels, 1, f"block_{index}")
        for index, out_channels in enumerate(conv_channels)
    ]
    layers.append(net_config.LayerSpec(enums.LayerKind.GLOBAL_AVERAGE_POOL, name="pool"))
    layers.append(net_config.LayerSpec(enums.LayerKind.AFFINE, embedding_dim, name=constants.EMBEDDING_LAYER_NAME))
    return net_config.NetConfig(
        enums.InputKind.GRID, (height, width, channels), tuple(layers), embedding_dim, tuple(taps)
    )


def grid_teacher_config(height, width, channels, embedding_dim=constants.DEFAULT_EMBEDDING_DIM, taps=()):
    return grid_net_config(height, width, channels, (16, 16), embedding_dim, taps)


def grid_student_config(height, width, channels, embedding_dim=constants.DEFAULT_EMBEDDING_DIM, taps=()):
    return grid_net_config(height, width, channels, (4, 4), embedding_dim, taps)
