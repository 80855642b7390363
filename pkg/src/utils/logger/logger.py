"""
Логирование gradal: корневой логгер пишет в файл с ротацией и в консоль через rich.
Настройки берутся из секции LOGGING_SETTINGS.
"""
import logging
import os
from logging.handlers import RotatingFileHandler

from rich.logging import RichHandler

from src.config.config import config

FILE_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
# метка обработчиков gradal на корневом логгере
_MARK = "_gradal"


class LoggerManager:
    def __init__(self):
        settings = config.get_section("LOGGING_SETTINGS")
        self.level = settings["LEVEL"].upper()
        self.log_file = os.path.join(settings["LOG_DIR"], settings["FILENAME"])
        self.max_bytes = settings["MAX_BYTES"]
        self.backup_count = settings["BACKUP_COUNT"]

        root = logging.getLogger()
        root.setLevel(self.level)
        # при повторном импорте (pytest) обработчики уже стоят
        if not any(getattr(h, _MARK, False) for h in root.handlers):
            os.makedirs(settings["LOG_DIR"], exist_ok=True)
            for handler in (self._file_handler(), self._console_handler()):
                setattr(handler, _MARK, True)
                root.addHandler(handler)

        logging.getLogger(__name__).debug(
            f"📊 Лог {self.log_file}: до {self.max_bytes // 1024} КБ, {self.backup_count} архивов, уровень {self.level}"
        )

    def _file_handler(self) -> logging.Handler:
        handler = RotatingFileHandler(
            self.log_file, maxBytes=self.max_bytes, backupCount=self.backup_count, encoding="utf-8"
        )
        handler.setFormatter(logging.Formatter(FILE_FORMAT))
        return handler

    @staticmethod
    def _console_handler() -> logging.Handler:
        # markup выключен: идеалы и списки слоёв содержат квадратные скобки
        handler = RichHandler(markup=False, rich_tracebacks=True, show_path=True)
        handler.setFormatter(logging.Formatter("%(message)s"))
        return handler

    @staticmethod
    def get_logger(name: str) -> logging.Logger:
        return logging.getLogger(name)


log_manager = LoggerManager()
get_logger = LoggerManager.get_logger
