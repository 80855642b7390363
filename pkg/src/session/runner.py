"""
Исполнение сессии: команды выполняются в пуле потоков, записи отчёта
выдаются в порядке сценария. Ошибка одной команды не прерывает остальные.
"""
import concurrent.futures
import hashlib
from typing import Optional

from src.config.config import config
from src.kernel.core.enums import RecordStatus
from src.kernel.core.errors import InconclusiveError, KernelError, NonReducedFiberError
from src.kernel.core.settings import KernelSettings, resolve
from src.session import nodes
from src.session.builder import SessionBuilder
from src.session.commands import Outcome, command_key, execute_command
from src.session.errors import SessionError
from src.session.parser import parse_session
from src.session.printer import print_command
from src.session.reports.collector import ReportCollector
from src.session.reports.serializers import serialize_error
from src.session.reports.session_report import SessionReport
from src.utils.logger.logger_time import LoggingTimer

# Логирование
# ====================================================
from src.utils.logger.logger import get_logger
logger = get_logger(__name__)


def input_hash(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


class SessionRunner:
    def __init__(self, session: nodes.Session, source_hash: str = "",
                 settings: Optional[KernelSettings] = None, max_workers: Optional[int] = None):
        self.session = session
        self.source_hash = source_hash
        self.settings = resolve(settings)
        self.max_workers = max_workers or config.get_setting("RUNNER_SETTINGS", "MAX_WORKERS")
        self.builder = SessionBuilder(session, self.settings)
        self.collector = ReportCollector()

    def provenance(self) -> dict:
        return {
            "input_sha256": self.source_hash,
            "eps": self.settings.eps,
            "deg_bound": self.settings.deg_bound,
            "seed": self.settings.seed,
        }

    def empty_report(self) -> SessionReport:
        return SessionReport(
            schema=config.get_setting("REPORT_SETTINGS", "SCHEMA_VERSION"),
            version=config.get_setting("REPORT_SETTINGS", "TOOL_VERSION"),
            provenance=self.provenance(),
        )

    # ====================================================
    # Одна команда
    # ====================================================
    def _execute(self, index: int, command: nodes.Command) -> Outcome:
        key = command_key(command)
        task_name = f"[{index}] {print_command(command)}"
        with LoggingTimer(task_name, level="debug"):
            try:
                return execute_command(self.builder, command, self.settings)
            except NonReducedFiberError as e:
                return Outcome(RecordStatus.FAIL, {"witness": e.prime, "message": str(e)}, key)
            except InconclusiveError as e:
                logger.warning(f"⚠️ {task_name}: {e.reason}")
                return Outcome(RecordStatus.INCONCLUSIVE, {"reason": e.reason}, key)
            except (KernelError, SessionError) as e:
                logger.error(f"❌ {task_name}: {e}")
                return Outcome(RecordStatus.ERROR, serialize_error(e), key)
            except Exception as e:
                logger.exception(f"❌ {task_name}: непредвиденная ошибка: {e}")
                return Outcome(RecordStatus.ERROR, serialize_error(e), key)

    # ====================================================
    # Сессия
    # ====================================================
    def run(self) -> SessionReport:
        commands = list(enumerate(self.session.commands, start=1))
        logger.info(f"🔍 Сессия: {len(self.session.declarations)} объявлений, {len(commands)} команд")
        with concurrent.futures.ThreadPoolExecutor(max_workers=self.max_workers) as executor:
            futures = {
                executor.submit(self._execute, index, command): (index, command)
                for index, command in commands
            }
            for future in concurrent.futures.as_completed(futures):
                index, command = futures[future]
                outcome = future.result()
                self.collector.add(
                    index=index,
                    command=print_command(command),
                    line=command.loc.line,
                    status=outcome.status.value,
                    result=outcome.result,
                    provenance={"oracle": outcome.oracle},
                )
        report = self.empty_report()
        report.records = self.collector.records()
        totals = ", ".join(f"{k}={v}" for k, v in report.totals().items() if v)
        icon = {0: "✅", 1: "❌", 2: "❌"}[report.exit_code]
        logger.info(f"{icon} Сессия завершена: {totals or 'нет команд'}")
        return report


def run_text(text: str, settings: Optional[KernelSettings] = None, max_workers: Optional[int] = None) -> SessionReport:
    """Разбор и исполнение; ошибка разбора даёт отчёт без записей с кодом 2."""
    source_hash = input_hash(text)
    try:
        session = parse_session(text)
    except SessionError as e:
        logger.error(f"❌ Ошибка разбора сценария: {e}")
        runner = SessionRunner(nodes.Session(), source_hash, settings, max_workers)
        report = runner.empty_report()
        report.error = {**serialize_error(e), "line": e.line, "column": e.column}
        return report
    return SessionRunner(session, source_hash, settings, max_workers).run()
