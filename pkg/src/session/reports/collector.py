# src/session/reports/collector.py
from threading import Lock
from typing import Dict, List


class ReportCollector:
    """Записи команд, собираемые из потоков; порядок выдачи: порядок команд в сценарии."""

    def __init__(self):
        self.data: Dict[int, dict] = {}
        self._lock = Lock()

    def add(
        self,
        *,
        index: int,
        command: str,
        line: int,
        status: str,
        result: dict,
        provenance: dict,
    ):
        with self._lock:
            self.data[index] = {
                "index": index,
                "command": command,
                "line": line,
                "status": status,
                "result": result,
                "provenance": provenance,
            }

    def records(self) -> List[dict]:
        with self._lock:
            return [self.data[i] for i in sorted(self.data)]
