from .config import Settings, _settings
from .zbwlog import logger, setup_logger

__all__ = ["Settings", "_settings", "logger", "setup_logger"]
