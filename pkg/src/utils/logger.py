import logging
import os
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Optional

import colorlog


def setup_logger(name: str = "archlab", log_file: Optional[str] = None) -> logging.Logger:
    """
    Sets up a logger with a colored stderr handler and an optional rotating file handler.

    stdout is left alone: the CLI writes results there.
    """
    logger = logging.getLogger(name)
    level_name = os.getenv("ARCHLAB_LOG_LEVEL", "INFO").upper()
    logger.setLevel(getattr(logging, level_name, logging.INFO))

    # Avoid adding handlers multiple times
    if logger.handlers:
        return logger

    # 1. Console Handler (with Colors)
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(logger.level)

    color_formatter = colorlog.ColoredFormatter(
        "%(log_color)s%(asctime)s [%(levelname)s] %(name)s: %(message)s",
        datefmt="%H:%M:%S",
        log_colors={
            'DEBUG': 'cyan',
            'INFO': 'green',
            'WARNING': 'yellow',
            'ERROR': 'red',
            'CRITICAL': 'red,bg_white',
        }
    )
    console_handler.setFormatter(color_formatter)
    logger.addHandler(console_handler)

    # 2. File Handler (Detailed), only when asked for
    log_file = log_file or os.getenv("ARCHLAB_LOG_FILE")
    if log_file:
        attach_file_handler(logger, log_file)

    return logger


def attach_file_handler(logger: logging.Logger, log_file: str) -> None:
    path = Path(log_file)
    for handler in logger.handlers:
        if isinstance(handler, RotatingFileHandler) and Path(handler.baseFilename) == path.resolve():
            return
    path.parent.mkdir(parents=True, exist_ok=True)
    file_handler = RotatingFileHandler(
        path,
        maxBytes=10*1024*1024,  # 10MB
        backupCount=5,
        encoding='utf-8'
    )
    file_handler.setLevel(logging.DEBUG)
    file_formatter = logging.Formatter(
        "%(asctime)s - [%(levelname)s] - %(name)s - %(filename)s:%(lineno)d - %(message)s"
    )
    file_handler.setFormatter(file_formatter)
    logger.addHandler(file_handler)


# Global logger instance
logger = setup_logger()
