import logging
import sys

APP_LOG_NAME = "minmcm"
ERROR_LOG_NAME = "minmcm.errors"


def init_logging(level: str = "INFO") -> None:
    formatter = logging.Formatter(
        "%(asctime)s | %(levelname)s | %(message)s",
        datefmt="%Y-%m-%dT%H:%M:%S%z",
    )
    numeric_level = logging.getLevelName(level.upper())
    if not isinstance(numeric_level, int):
        numeric_level = logging.INFO

    # Configure root logger; stdout is reserved for command output
    root_logger = logging.getLogger()
    root_logger.setLevel(numeric_level)
    if not root_logger.handlers:
        root_handler = logging.StreamHandler(sys.stderr)
        root_handler.setLevel(numeric_level)
        root_handler.setFormatter(formatter)
        root_logger.addHandler(root_handler)

    app_logger = logging.getLogger(APP_LOG_NAME)
    app_logger.setLevel(numeric_level)
    if not app_logger.handlers:
        app_handler = logging.StreamHandler(sys.stderr)
        app_handler.setLevel(numeric_level)
        app_handler.setFormatter(formatter)
        app_logger.addHandler(app_handler)
        app_logger.propagate = False

    error_logger = logging.getLogger(ERROR_LOG_NAME)
    if not error_logger.handlers:
        error_logger.setLevel(logging.ERROR)
        error_handler = logging.StreamHandler(sys.stderr)
        error_handler.setLevel(logging.ERROR)
        error_handler.setFormatter(formatter)
        error_logger.addHandler(error_handler)
        error_logger.propagate = False


def get_app_logger() -> logging.Logger:
    return logging.getLogger(APP_LOG_NAME)


def get_error_logger() -> logging.Logger:
    return logging.getLogger(ERROR_LOG_NAME)


def log_stage_entry(logger: logging.Logger, stage_name: str, detail: str | None = None) -> None:
    separator = "=" * 90
    logger.info(separator)
    if detail:
        logger.info(">>> STAGE: %s (%s)", stage_name, detail)
    else:
        logger.info(">>> STAGE: %s", stage_name)
    logger.info(separator)
