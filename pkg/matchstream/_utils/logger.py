import logging
import sys

ROOT_LOGGER_NAME = "matchstream"


def setup_cli_logger() -> logging.Logger:
    # Algorithm modules log under "matchstream.<module>" and propagate here.
    logger = logging.getLogger(ROOT_LOGGER_NAME)
    logger.setLevel(logging.INFO)
    if not logger.handlers:
        handler = logging.StreamHandler(sys.stdout)
        handler.setLevel(logging.DEBUG)
        logger.addHandler(handler)
    return logger


def enable_verbose_logging() -> None:
    logging.getLogger(ROOT_LOGGER_NAME).setLevel(logging.DEBUG)


cli_logger = setup_cli_logger()
