# file: app/logging_config.py
"""
Logging setup shared by the CLI and the engine ("hygro_xfem" logger tree).
"""

import copy
import logging
import sys
from typing import Optional

LOGGER_NAME = "hygro_xfem"
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
DATE_FORMAT = '%Y-%m-%d %H:%M:%S'


# ANSI color codes for console output
class ColorFormatter(logging.Formatter):
    """Level names colored for interactive terminals."""

    COLORS = {
        'DEBUG': '\033[36m',      # Cyan
        'INFO': '\033[32m',       # Green
        'WARNING': '\033[33m',    # Yellow
        'ERROR': '\033[31m',      # Red
        'CRITICAL': '\033[35m',   # Magenta
    }
    RESET = '\033[0m'

    def format(self, record):
        # the record is shared with the file handler
        record = copy.copy(record)
        log_color = self.COLORS.get(record.levelname, self.RESET)
        record.levelname = f"{log_color}{record.levelname}{self.RESET}"
        return super().format(record)


def setup_logging(
    log_level: int = logging.INFO,
    use_colors: Optional[bool] = None,
    log_file: Optional[str] = None
) -> logging.Logger:
    """
    Configure the engine logger.

    Args:
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        use_colors: Colored level names; defaults to stdout being a terminal
        log_file: Optional path to log file for persistent logging

    Returns:
        Configured logger instance
    """
    if use_colors is None:
        use_colors = sys.stdout.isatty()

    logger = logging.getLogger(LOGGER_NAME)
    logger.setLevel(log_level)
    logger.handlers.clear()
    logger.propagate = False

    console_handler = logging.StreamHandler(sys.stdout)
    console_handler.setLevel(log_level)
    formatter_cls = ColorFormatter if use_colors else logging.Formatter
    console_handler.setFormatter(formatter_cls(fmt=LOG_FORMAT, datefmt=DATE_FORMAT))
    logger.addHandler(console_handler)

    if log_file:
        try:
            file_handler = logging.FileHandler(log_file, encoding='utf-8')
            file_handler.setLevel(log_level)
            file_handler.setFormatter(logging.Formatter(fmt=LOG_FORMAT, datefmt=DATE_FORMAT))
            logger.addHandler(file_handler)
            logger.info(f"Logging to file: {log_file}")
        except OSError as e:
            logger.error(f"Failed to setup file logging: {e}")

    # Suppress noisy third-party loggers
    logging.getLogger("vtk").setLevel(logging.WARNING)
    logging.getLogger("joblib").setLevel(logging.WARNING)

    return logger
