# =======================================================================================
# szclassify/utils/log.py - Logging Setup
# =======================================================================================
import sys
from typing import Optional
from loguru import logger
from ..config import config

_FORMAT = "<green>{time:HH:mm:ss}</green> | <level>{level: <7}</level> | {name}:{function} - {message}"


def configure_logging(level: Optional[str] = None) -> None:
    """Replace loguru's default sink with a single stderr sink."""
    logger.remove()
    logger.add(sys.stderr, level=(level or config.LOG_LEVEL).upper(), format=_FORMAT)
