"""Logging configuration shared by the CLI and the HTTP service."""

import logging
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Optional

from app.config import Settings, get_settings

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
LOG_FILE_NAME = "binpack.log"

# Loggers whose DEBUG output also goes to the rotating file
FILE_LOGGERS = [
    "app.services.engine",
    "app.services.checkpoint",
    "app.services.genetic",
    "app.services.oracle",
    "app.services.results_log",
    "app.tasks.background",
]


def setup_logging(settings: Optional[Settings] = None, log_to_file: bool = True) -> Optional[Path]:
    """Configure logging to the console and, optionally, a rotating file.

    Args:
        settings: Settings providing log_dir and log_level (defaults to get_settings())
        log_to_file: Attach the RotatingFileHandler for run loggers

    Returns:
        Path of the log file, or None when file logging is off
    """
    if settings is None:
        settings = get_settings()

    formatter = logging.Formatter(LOG_FORMAT)

    root_logger = logging.getLogger()
    root_logger.setLevel(logging.INFO)
    for handler in list(root_logger.handlers):
        if getattr(handler, "_binpack", False):
            root_logger.removeHandler(handler)

    console_handler = logging.StreamHandler()
    console_handler.setLevel(getattr(logging, settings.log_level))
    console_handler.setFormatter(formatter)
    console_handler._binpack = True
    root_logger.addHandler(console_handler)

    if not log_to_file:
        return None

    log_dir = Path(settings.log_dir)
    log_dir.mkdir(parents=True, exist_ok=True)
    log_file = log_dir / LOG_FILE_NAME

    # Rotate at 10MB, keep 5 backups
    file_handler = RotatingFileHandler(
        log_file,
        maxBytes=10 * 1024 * 1024,
        backupCount=5,
        encoding="utf-8",
    )
    file_handler.setLevel(logging.DEBUG)
    file_handler.setFormatter(formatter)

    for logger_name in FILE_LOGGERS:
        run_logger = logging.getLogger(logger_name)
        run_logger.setLevel(logging.DEBUG)
        for handler in list(run_logger.handlers):
            if isinstance(handler, RotatingFileHandler):
                run_logger.removeHandler(handler)
                handler.close()
        run_logger.addHandler(file_handler)

    logging.info("Logging configured: console=%s, file=%s", settings.log_level, log_file)
    return log_file
