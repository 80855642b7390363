import time
from typing import Optional

# Логирование
# ====================================================
from src.utils.logger.logger import get_logger
logger = get_logger(__name__)


def format_elapsed(seconds: Optional[float]) -> str:
    if seconds is None:
        return "n/a"
    if seconds < 60:
        return f"{seconds:.3f} с"
    minutes, rest = divmod(seconds, 60)
    return f"{int(minutes)} мин {rest:.1f} с"


class LoggingTimer:
    """
    with LoggingTimer("Условие (4)"): ... пишет в лог начало и итог задачи.
    elapsed: длительность в секундах после выхода из блока.
    """

    def __init__(self, task_name: str = "Задача", level: str = "info"):
        self.task_name = task_name
        self.elapsed: Optional[float] = None
        self._emit = getattr(logger, level)
        self._started = 0.0

    def __enter__(self) -> "LoggingTimer":
        self._started = time.perf_counter()
        self._emit(f"▶ {self.task_name}")
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.elapsed = time.perf_counter() - self._started
        outcome = f"❌ прервано ({exc_type.__name__})" if exc_type is not None else "✅ готово"
        self._emit(f"{outcome}: {self.task_name} за {format_elapsed(self.elapsed)}")
        return False
