import logging
from typing import Optional

from gedgm.config.settings import settings

_initialized = False


def initialize_logging(level: Optional[str] = None) -> None:
    """
    Configure the root logger for command-line runs

    Args:
        level: Log level name; falls back to settings.LOG_LEVEL
    """
    global _initialized

    level_name = (level or settings.LOG_LEVEL).upper()
    numeric_level = logging.getLevelName(level_name)
    if not isinstance(numeric_level, int):
        numeric_level = logging.WARNING

    if _initialized:
        logging.getLogger().setLevel(numeric_level)
        return

    logging.basicConfig(level=numeric_level, format=settings.LOG_FORMAT)
    _initialized = True
