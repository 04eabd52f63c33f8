"""Logging configuration for the stereolab engine using loguru.

This module sets up console logging with helpful debug information.
Import logger from this module to use throughout the engine.

Example:
    from src.logger import logger

    logger.info("Cell computed", group="P4_232", facets=15)
    logger.debug("Cut applied", halfspace=str(h), vertices=len(vertices))
"""

import sys

from loguru import logger

from src.settings import get_settings

_FORMAT = (
    "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | "
    "<level>{level: <8}</level> | "
    "<cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> | "
    "<level>{message}</level>"
)


def configure_logging(level: str = "INFO") -> None:
    """Install the single stderr sink at the given level.

    Args:
        level: Loguru level name (e.g. "INFO", "DEBUG").
    """
    logger.remove()
    logger.add(sys.stderr, format=_FORMAT, level=level.upper(), colorize=True)


configure_logging(get_settings().log_level)

__all__ = ["configure_logging", "logger"]
