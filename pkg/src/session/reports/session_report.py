# src/session/reports/session_report.py
import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from src.kernel.core.enums import RecordStatus

TOOL_NAME = "gradal"


@dataclass
class SessionReport:
    schema: int
    version: str
    provenance: Dict[str, object]
    records: List[dict] = field(default_factory=list)
    error: Optional[dict] = None        # ошибка разбора сценария (команды не выполнялись)

    @property
    def statuses(self) -> List[str]:
        return [r["status"] for r in self.records]

    @property
    def exit_code(self) -> int:
        """0: всё pass/complete/inconclusive; 1: есть fail; 2: есть error (доминирует)."""
        statuses = self.statuses
        if self.error is not None or RecordStatus.ERROR.value in statuses:
            return 2
        if RecordStatus.FAIL.value in statuses:
            return 1
        return 0

    def totals(self) -> Dict[str, int]:
        return {s.value: self.statuses.count(s.value) for s in RecordStatus}

    def to_dict(self) -> dict:
        data = {
            "schema": self.schema,
            "tool": {"name": TOOL_NAME, "version": self.version},
            "provenance": self.provenance,
            "records": self.records,
            "totals": self.totals(),
            "exit_code": self.exit_code,
        }
        if self.error is not None:
            data["error"] = self.error
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"
