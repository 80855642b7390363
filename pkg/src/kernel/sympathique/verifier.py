import concurrent.futures
from typing import Callable, Dict, Optional

from src.config.config import config
from src.kernel.core.enums import Verdict
from src.kernel.core.errors import (
    InconclusiveError,
    NonReducedFiberError,
    PrecisionError,
    UndecidableError,
    UnsupportedError,
)
from src.kernel.core.settings import KernelSettings, resolve
from src.kernel.sympathique.conditions import (
    build_splitting_cover,
    check_fiber_norms,
    check_fiber_strong_generation,
    check_geom_irreducible_components,
    check_radii,
    check_reduction_flat_reduced,
)
from src.kernel.sympathique.presentation import RelativePresentation
from src.kernel.sympathique.report import CONDITION_NAMES, ConditionResult, SympathiqueReport
from src.utils.logger.logger_time import LoggingTimer

# Логирование
# ====================================================
from src.utils.logger.logger import get_logger
logger = get_logger(__name__)


class SympathiqueVerifier:
    """
    Шесть условий проверяются параллельно (пул потоков RUNNER_SETTINGS.MAX_WORKERS);
    отчёт собирается в порядке номеров условий.
    """

    def __init__(self, presentation: RelativePresentation, settings: Optional[KernelSettings] = None,
                 max_workers: Optional[int] = None):
        self.presentation = presentation
        self.settings = resolve(settings)
        self.max_workers = max_workers or config.get_setting("RUNNER_SETTINGS", "MAX_WORKERS")
        self.cover = None

    def _splitting_cover(self, presentation, settings) -> ConditionResult:
        result, cover = build_splitting_cover(presentation, settings)
        self.cover = cover
        return result

    def _checks(self) -> Dict[int, Callable]:
        return {
            1: check_radii,
            2: check_fiber_norms,
            3: check_fiber_strong_generation,
            4: check_reduction_flat_reduced,
            5: check_geom_irreducible_components,
            6: self._splitting_cover,
        }

    def _run_one(self, number: int, check: Callable) -> ConditionResult:
        name = CONDITION_NAMES[number]
        with LoggingTimer(f"Условие ({number}) {name} для {self.presentation.name}", level="debug"):
            try:
                return check(self.presentation, self.settings)
            except NonReducedFiberError as e:
                return ConditionResult(number, name, Verdict.FAIL, e.prime, str(e))
            except (InconclusiveError, UndecidableError, UnsupportedError, PrecisionError) as e:
                logger.warning(f"⚠️ Условие ({number}) {name}: {e}")
                return ConditionResult(number, name, Verdict.INCONCLUSIVE, None, str(e))

    def run(self) -> SympathiqueReport:
        results: Dict[int, ConditionResult] = {}
        with concurrent.futures.ThreadPoolExecutor(max_workers=self.max_workers) as executor:
            futures = {
                executor.submit(self._run_one, number, check): number
                for number, check in self._checks().items()
            }
            for future in concurrent.futures.as_completed(futures):
                # UsageError и прочие ошибки использования пробрасываются
                results[futures[future]] = future.result()
        report = SympathiqueReport(
            self.presentation.describe(),
            [results[n] for n in sorted(results)],
            self.cover,
        )
        icon = {Verdict.PASS: "✅", Verdict.FAIL: "❌", Verdict.INCONCLUSIVE: "⚠️"}[report.overall]
        logger.info(f"{icon} {self.presentation.name}: Γ-симпатичность = {report.overall.value}")
        return report


def verify_sympathique(presentation: RelativePresentation, settings: Optional[KernelSettings] = None) -> SympathiqueReport:
    return SympathiqueVerifier(presentation, settings).run()
