"""
Шесть условий Γ-симпатичного представления B = A{T/r}/(a_1..a_m).

Условия (2)-(3) квантифицируются по всем точкам x ∈ M(A); проверяются
достаточный критерий на уровне вычетов и конечная выборка слоёв.
Условия (4)-(6) проверяются на перечисленных точках Spec Ã
(общие точки, редукции выборки, точки-кандидаты).
"""
from typing import Dict, List, Optional, Tuple

import sympy
from sympy import Poly

from src.kernel.algebra.context import AlgebraContext
from src.kernel.core.enums import Verdict
from src.kernel.core.errors import InconclusiveError, PrecisionError, UndecidableError, UnsupportedError
from src.kernel.core.settings import KernelSettings
from src.kernel.degree.groups import DegreeElement
from src.kernel.ideal.components import local_components
from src.kernel.ideal.geometric import is_geometrically_irreducible, is_geometrically_reduced
from src.kernel.ideal.graded_ideal import GradedIdeal, is_reduced, minimal_primes
from src.kernel.sympathique.fibration import ResidueFibration, fiber_extensions
from src.kernel.sympathique.presentation import RelativePresentation
from src.kernel.sympathique.report import CONDITION_NAMES, ConditionResult
from src.kernel.tate.presentation import is_strongly_generating, reduce_series
from src.kernel.tate.series import TateSeries
from src.kernel.valuation.cover import CoverOpen, FiberCheck, OpenCover, classify_on_fiber

# Логирование
# ====================================================
from src.utils.logger.logger import get_logger
logger = get_logger(__name__)

UNDECIDED = (InconclusiveError, UndecidableError, UnsupportedError)


def _result(number: int, verdict: Verdict, witness: Optional[str] = None, detail: str = "") -> ConditionResult:
    icon = {Verdict.PASS: "✅", Verdict.FAIL: "❌", Verdict.INCONCLUSIVE: "⚠️"}[verdict]
    logger.info(f"{icon} Условие ({number}) {CONDITION_NAMES[number]}: {verdict.value}" + (f" [{witness}]" if witness else ""))
    return ConditionResult(number, CONDITION_NAMES[number], verdict, witness, detail)


# ====================================================
# (1) Радиусы и нормы в Γ
# ====================================================
def check_radii(presentation: RelativePresentation, settings: Optional[KernelSettings] = None) -> ConditionResult:
    ring = presentation.total_ring
    for symbol, r in zip(presentation.fiber_symbols, presentation.radii):
        if not ring.in_gamma(r):
            return _result(1, Verdict.FAIL, f"r({symbol}) = {r}", f"Γ·|k^×| = {ring.gamma}")
    for a, rho in zip(presentation.relators, presentation.norms):
        if not ring.in_gamma(rho):
            return _result(1, Verdict.FAIL, f"‖{a}‖ = {rho}", f"Γ·|k^×| = {ring.gamma}")
    return _result(1, Verdict.PASS)


# ====================================================
# (2) Нормы на слоях
# ====================================================
def _coefficients_by_fiber_exponent(presentation: RelativePresentation, a: TateSeries) -> Dict[Tuple[int, ...], TateSeries]:
    """a = Σ_J a_J(S)·T^J; a_J хранятся в общем кольце с нулевыми показателями T."""
    k = len(presentation.base_symbols)
    m = len(presentation.fiber_symbols)
    groups: Dict[Tuple[int, ...], Dict[Tuple[int, ...], object]] = {}
    for exps, c in a.terms.items():
        groups.setdefault(exps[k:], {})[exps[:k] + (0,) * m] = c
    return {J: presentation.total_ring.series(terms, a.exact) for J, terms in groups.items()}


def _has_unit_top_coefficient(presentation: RelativePresentation, fibration: ResidueFibration,
                              a: TateSeries, rho: DegreeElement) -> bool:
    """Некоторый a_J с |a_J|·r^J = ρ имеет вычет, не обращающийся в нуль на Spec Ã."""
    k = len(presentation.base_symbols)
    for J, coefficient in sorted(_coefficients_by_fiber_exponent(presentation, a).items()):
        size = coefficient.gauss_norm()
        if size is None:
            continue
        if size * presentation.total_ring.monomial_norm((0,) * k + J) != rho:
            continue
        residue = reduce_series(coefficient, fibration.ring)
        if GradedIdeal(fibration.ring, fibration.base_reductions + [residue]).is_unit:
            return True
    return False


def check_fiber_norms(presentation: RelativePresentation, settings: Optional[KernelSettings] = None) -> ConditionResult:
    fibration = presentation.fibration(settings)
    for point in presentation.points:
        for a, rho in zip(presentation.relators, presentation.norms):
            restricted = a.specialize(point.mapping, presentation.relative_ring)
            try:
                size = restricted.gauss_norm()
            except PrecisionError:
                return _result(2, Verdict.INCONCLUSIVE, point.label, f"{a}|D_x ниже порога точности")
            if size != rho:
                return _result(2, Verdict.FAIL, f"x = {point.label}, {a}", f"‖a|D_x‖ = {size or 0} ≠ ρ = {rho}")
    try:
        uniform = all(
            _has_unit_top_coefficient(presentation, fibration, a, rho)
            for a, rho in zip(presentation.relators, presentation.norms)
        )
    except PrecisionError:
        uniform = False
    if uniform:
        return _result(2, Verdict.PASS)
    return _result(2, Verdict.INCONCLUSIVE, detail=f"проверено только на {len(presentation.points)} точках выборки")


# ====================================================
# (3) Сильная порождаемость на слоях
# ====================================================
def check_fiber_strong_generation(presentation: RelativePresentation,
                                  settings: Optional[KernelSettings] = None) -> ConditionResult:
    if len(presentation.relators) <= 1:
        return _result(3, Verdict.PASS, detail="не более одного соотношения")
    if not presentation.points:
        return _result(3, Verdict.INCONCLUSIVE, detail="нет точек выборки")
    verdicts = []
    for point in presentation.points:
        verdict = is_strongly_generating(presentation.fiber(point), settings=settings)
        if verdict is Verdict.FAIL:
            return _result(3, Verdict.FAIL, point.label)
        verdicts.append(verdict)
    return _result(3, Verdict.combine(verdicts))


# ====================================================
# (4) Плоскость и геометрическая приведённость слоёв
# ====================================================
def check_reduction_flat_reduced(presentation: RelativePresentation,
                                 settings: Optional[KernelSettings] = None) -> ConditionResult:
    fibration = presentation.fibration(settings)
    flatness = fibration.flatness()
    if flatness.verdict is Verdict.FAIL:
        return _result(4, Verdict.FAIL, flatness.witness, flatness.reason)
    failing: List[str] = []
    reasons: List[str] = []
    for fiber in fibration.fibers:
        try:
            reduced = is_geometrically_reduced(fiber.ideal, fiber_extensions(fiber.ideal) or None, settings)
        except UNDECIDED as e:
            reasons.append(f"{fiber.point.label}: {e}")
            continue
        if not reduced:
            failing.append(fiber.point.label)
    if failing:
        return _result(4, Verdict.FAIL, ", ".join(failing), "слой не геометрически приведён")
    if reasons or flatness.verdict is Verdict.INCONCLUSIVE:
        return _result(4, Verdict.INCONCLUSIVE, detail="; ".join([flatness.reason] + reasons))
    return _result(4, Verdict.PASS, detail=flatness.reason)


# ====================================================
# (5) Геометрическая неприводимость компонент слоёв
# ====================================================
def check_geom_irreducible_components(presentation: RelativePresentation,
                                      settings: Optional[KernelSettings] = None) -> ConditionResult:
    fibration = presentation.fibration(settings)
    reasons: List[str] = []
    for fiber in fibration.fibers:
        if fiber.ideal.is_unit:
            continue
        for prime in minimal_primes(fiber.ideal, settings):
            try:
                verdict = is_geometrically_irreducible(prime, settings)
            except UNDECIDED as e:
                reasons.append(f"{fiber.point.label}: {e}")
                continue
            if verdict is Verdict.FAIL:
                return _result(5, Verdict.FAIL, f"{fiber.point.label}: {prime.describe()}")
    if reasons:
        return _result(5, Verdict.INCONCLUSIVE, detail="; ".join(reasons))
    return _result(5, Verdict.PASS)


# ====================================================
# (6) Разрезающее покрытие
# ====================================================
def _is_section_piece(fibration: ResidueFibration, numerator, denominator) -> bool:
    """
    D(e): глобальный идемпотент, и кусок V(I, e - 1) в лексикографическом
    базисе (T ≫ S) задаётся соотношениями базы и графиками T_i = φ(S):
    каждый его слой: точка, аффинное пространство или пуст.
    """
    total = fibration.total_ideal.arithmetic
    ctx = total.context
    if sympy.sympify(denominator).free_symbols & set(ctx.variables):
        return False
    if not total.contains(ctx.normalize(numerator * numerator - numerator * denominator)):
        return False
    fiber_symbols = fibration.fiber_symbols
    order = AlgebraContext(
        ctx.characteristic,
        tuple(fiber_symbols) + tuple(v for v in ctx.variables if v not in set(fiber_symbols)),
        ctx.parameters,
    )
    for b in order.groebner(list(total.basis) + [ctx.normalize(numerator - denominator)]):
        present = b.free_symbols & set(fiber_symbols)
        if not present:
            continue
        if len(present) != 1:
            return False
        poly = Poly(b, *fiber_symbols)
        if poly.total_degree() != 1 or poly.LC().free_symbols:
            return False
    return True


def build_splitting_cover(presentation: RelativePresentation,
                          settings: Optional[KernelSettings] = None) -> Tuple[ConditionResult, Optional[OpenCover]]:
    fibration = presentation.fibration(settings)
    fibers = []
    for fiber in fibration.fibers:
        if not is_reduced(fiber.ideal, settings):
            return _result(6, Verdict.FAIL, fiber.point.label, "неприведённый слой"), None
        try:
            components = local_components(fiber.ideal.arithmetic, settings)
        except InconclusiveError as e:
            return _result(6, Verdict.INCONCLUSIVE, fiber.point.label, e.reason), None
        fibers.append((fiber, components))

    candidates = [(sympy.Integer(1), sympy.Integer(1))]
    for _, components in fibers:
        if len(components) < 2:
            continue
        for e in components:
            g = sympy.expand(e.numerator)
            if not any(sympy.expand(g - c) == 0 for c, _ in candidates):
                candidates.append((g, e.denominator))

    cover = OpenCover(components=[(f.point.label, len(c)) for f, c in fibers])
    covered = {(f.point.label, k) for f, comps in fibers for k in range(len(comps))}
    reached = set()
    pieces = []
    for g, denominator in candidates:
        checks = []
        for fiber, components in fibers:
            outcome = classify_on_fiber(g, fiber.ideal.arithmetic, components)
            if outcome is None:
                break
            status, k = outcome
            checks.append(FiberCheck(fiber.point.label, status if k is None else f"компонента {k + 1}", k))
        else:
            new = {(c.point, c.component) for c in checks if c.component is not None}
            if new - reached:
                cover.opens.append(CoverOpen(g, checks))
                pieces.append((g, denominator))
                reached |= new
    if reached != covered:
        missing = ", ".join(f"{p}#{k + 1}" for p, k in sorted(covered - reached))
        return _result(6, Verdict.INCONCLUSIVE, missing, "кандидаты не покрывают компоненты слоёв"), cover
    detail = f"{len(cover.opens)} открытых"
    if fibration.base_is_finite:
        return _result(6, Verdict.PASS, detail=f"{detail}, спектр базы перечислен полностью"), cover
    if all(_is_section_piece(fibration, g, d) for g, d in pieces):
        return _result(6, Verdict.PASS, detail=f"{detail}, куски: графики сечений"), cover
    return _result(6, Verdict.INCONCLUSIVE, detail=f"{detail}, проверено только на перечисленных точках"), cover
