from .logger import get_logger, log_manager
from .logger_time import LoggingTimer

__all__ = ["get_logger", "log_manager", "LoggingTimer"]
