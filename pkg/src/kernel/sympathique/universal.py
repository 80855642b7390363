"""
Универсальная различимость представления слоя.

Редукция должна быть геометрически приведена; далее достаточно одного из:
  (α) все минимальные простые Ã геометрически неприводимы;
  (β) для каждого минимального простого P_j задан свидетель f ≠ 0,
      вычет которого лежит во всех P_i (i ≠ j), но не в P_j, и норма
      которого в фактор-алгебре равна ‖f‖ (при сильно порождающей семье).
"""
from typing import List, Optional, Sequence

from src.kernel.core.enums import Verdict
from src.kernel.core.errors import InconclusiveError, PrecisionError, UndecidableError, UnsupportedError
from src.kernel.core.settings import KernelSettings, resolve
from src.kernel.ideal.geometric import is_geometrically_irreducible, is_geometrically_reduced
from src.kernel.ideal.graded_ideal import GradedIdeal, minimal_primes
from src.kernel.sympathique.fibration import fiber_extensions
from src.kernel.sympathique.report import ConditionResult
from src.kernel.tate.presentation import (
    TatePresentation,
    is_strongly_generating,
    quotient_norm_bound,
    reduce_series,
    reduction_ideal,
)
from src.kernel.tate.series import TateSeries

# Логирование
# ====================================================
from src.utils.logger.logger import get_logger
logger = get_logger(__name__)

NAME = "universally_distinguished"


def _done(verdict: Verdict, witness: Optional[str] = None, detail: str = "") -> ConditionResult:
    logger.info(f"🔍 Универсальная различимость: {verdict.value}" + (f" ({detail})" if detail else ""))
    return ConditionResult(None, NAME, verdict, witness, detail)


def _all_geometrically_integral(primes: List[GradedIdeal], settings: KernelSettings) -> Optional[bool]:
    """(α): True / False; None: поиск не завершён."""
    undecided = False
    for prime in primes:
        try:
            if is_geometrically_irreducible(prime, settings) is Verdict.FAIL:
                return False
        except (InconclusiveError, UndecidableError):
            undecided = True
    return None if undecided else True


def _separates(f: TateSeries, j: int, primes: List[GradedIdeal]) -> bool:
    residue = reduce_series(f, primes[j].ring)
    if primes[j].contains(residue):
        return False
    return all(p.contains(residue) for i, p in enumerate(primes) if i != j)


def check_universally_distinguished(
    presentation: TatePresentation,
    witnesses: Sequence[TateSeries] = (),
    settings: Optional[KernelSettings] = None,
) -> ConditionResult:
    settings = resolve(settings)
    ideal = reduction_ideal(presentation)
    try:
        reduced = is_geometrically_reduced(ideal, fiber_extensions(ideal) or None, settings)
    except (UndecidableError, UnsupportedError) as e:
        return _done(Verdict.INCONCLUSIVE, detail=str(e))
    if not reduced:
        return _done(Verdict.FAIL, ideal.describe(), "редукция не геометрически приведена")

    primes = minimal_primes(ideal, settings)
    integral = _all_geometrically_integral(primes, settings)
    if integral:
        return _done(Verdict.PASS, detail="(α) компоненты геометрически целостны")
    if not witnesses:
        reason = "(α) не выполнено" if integral is False else "(α) не решено"
        return _done(Verdict.INCONCLUSIVE, detail=f"{reason}, свидетели (β) не заданы")

    # (β)
    if len(presentation.relators) > 1 and is_strongly_generating(presentation, settings=settings) is not Verdict.PASS:
        return _done(Verdict.INCONCLUSIVE, detail="(β) требует сильно порождающей семьи")
    for j, prime in enumerate(primes):
        found = None
        for f in witnesses:
            if f.is_zero or not _separates(f, j, primes):
                continue
            try:
                if quotient_norm_bound(presentation, f, settings) == f.gauss_norm():
                    found = f
                    break
            except PrecisionError:
                continue
        if found is None:
            return _done(Verdict.INCONCLUSIVE, prime.describe(), "(β) нет подходящего свидетеля")
        logger.debug(f"🔍 (β) свидетель для {prime.describe()}: {found}")
    return _done(Verdict.PASS, detail="(β) свидетели проверены")
