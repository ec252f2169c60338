"""Root logger configuration"""

import logging
import sys
from pathlib import Path
from typing import Optional

from pythonjsonlogger.json import JsonFormatter

from src.config import LoggingConfig

TEXT_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
JSON_FIELDS = '%(asctime)s %(name)s %(levelname)s %(message)s'

_configured = False


def _formatter(fmt: str) -> logging.Formatter:
    if fmt == "json":
        return JsonFormatter(JSON_FIELDS, rename_fields={"levelname": "level", "asctime": "time"})
    return logging.Formatter(TEXT_FORMAT)


def setup_logging(settings: LoggingConfig, level_override: Optional[str] = None, force: bool = False) -> None:
    """
    Configure the root logger once per process

    Args:
        settings: Logging section of the configuration
        level_override: Level from the command line, wins over settings
        force: Replace handlers installed by an earlier call
    """
    global _configured
    if _configured and not force:
        return

    level_name = (level_override or settings.level).upper()
    level = getattr(logging, level_name, logging.INFO)
    formatter = _formatter(settings.format)

    handlers = [logging.StreamHandler(sys.stderr)]
    if settings.file:
        Path(settings.file).parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(settings.file))
    for handler in handlers:
        handler.setFormatter(formatter)

    logging.basicConfig(level=level, handlers=handlers, force=True)
    _configured = True
