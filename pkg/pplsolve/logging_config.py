"""Logging setup for the ``pplsolve`` logger tree.

Console output follows ``--verbose``; a ``--log-file`` always records DEBUG so
per-step diagnostics of a long solve can be inspected afterwards.
"""

import logging
import sys
from typing import Optional

ROOT_LOGGER_NAME = "pplsolve"

CONSOLE_FORMAT = "%(asctime)s - %(levelname)s - %(message)s"
FILE_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"


def setup_logging(
    level: str = "INFO",
    log_file: Optional[str] = None,
    verbose: bool = False,
) -> logging.Logger:
    """Configure the package logger; repeated calls replace earlier handlers.

    Args:
        level: Console log level name
        log_file: Optional file receiving DEBUG records with module names
        verbose: Console at DEBUG regardless of ``level``

    Returns:
        The ``pplsolve`` logger

    Example:
        >>> logger = setup_logging(verbose=True)
        >>> logger.info("solve started")
    """
    console_level = logging.DEBUG if verbose else getattr(logging, level.upper())

    logger = logging.getLogger(ROOT_LOGGER_NAME)
    for handler in logger.handlers:
        handler.close()
    logger.handlers = []

    console_handler = logging.StreamHandler(sys.stdout)
    console_handler.setLevel(console_level)
    console_handler.setFormatter(logging.Formatter(CONSOLE_FORMAT, datefmt=DATE_FORMAT))
    logger.addHandler(console_handler)

    if log_file:
        file_handler = logging.FileHandler(log_file, encoding="utf-8")
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(logging.Formatter(FILE_FORMAT, datefmt=DATE_FORMAT))
        logger.addHandler(file_handler)

    logger.setLevel(logging.DEBUG if log_file else console_level)
    logger.propagate = False
    return logger


def get_logger(name: str) -> logging.Logger:
    """Logger for ``name`` inside the ``pplsolve`` tree.

    Example:
        >>> get_logger("pplsolve.solvers.plada").name
        'pplsolve.solvers.plada'
        >>> get_logger("custom").name
        'pplsolve.custom'
    """
    if name == ROOT_LOGGER_NAME or name.startswith(f"{ROOT_LOGGER_NAME}."):
        return logging.getLogger(name)
    return logging.getLogger(f"{ROOT_LOGGER_NAME}.{name}")
