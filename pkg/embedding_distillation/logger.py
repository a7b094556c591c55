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
import logging
import logging.config as config
import os
import traceback
import sys

import octobot_commons.logging as common_logging

import embedding_distillation.constants as constants

LOGS_FILE_NAME = "EmbeddingDistillation.log"


def _log_uncaught_exceptions(ex_cls, ex, tb):
    logging.exception("".join(traceback.format_tb(tb)))
    logging.exception("{0}: {1}".format(ex_cls, ex))


def init_logger(logs_folder=constants.LOGS_FOLDER):
    """
    Console logs always, rotating file logs unless EMBEDDING_DISTILLATION_ENABLE_FILE_LOGS is false
    """
    try:
        logs_file = os.devnull
        if constants.ENABLE_FILE_LOGS:
            os.makedirs(logs_folder, exist_ok=True)
            logs_file = os.path.join(logs_folder, LOGS_FILE_NAME)
        config.fileConfig(
            constants.LOGGING_CONFIG_FILE,
            defaults={"logs_file": logs_file.replace("\\", "/")},
            disable_existing_loggers=False,
        )
        if constants.FORCED_LOG_LEVEL:
            logging.getLogger("Logging Configuration").info(
                f"Applying forced logging level {constants.FORCED_LOG_LEVEL}"
            )
            common_logging.set_global_logger_level(constants.FORCED_LOG_LEVEL)
    except (KeyError, OSError) as ex:
        logging.basicConfig(level=logging.INFO)
        logging.getLogger("Logging Configuration").warning(
            f"Impossible to load the logging configuration from '{constants.LOGGING_CONFIG_FILE}', "
            f"using a basic console configuration. {ex}"
        )
    sys.excepthook = _log_uncaught_exceptions
    return common_logging.get_logger(constants.PROJECT_NAME)
