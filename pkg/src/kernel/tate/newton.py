"""
Оракул многоугольника Ньютона для одномерных факторов k{T/r}/(f).

Для r-вейерштрассова f (‖f‖ = |c_n|·r^n) деление Вейерштрасса сохраняет
норму, и фактор-норма a равна норме Гаусса остатка a mod f. Спектральная
норма a: наибольшая норма корня результанта Res_T(f, z - a(T)).
Представление различимо ⟺ обе нормы совпадают на пробных элементах:
T^k (k < deg f) и подъём радикала f̃ (когда r = 1).
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import sympy
from sympy import Dummy, Poly

from src.kernel.core.enums import ValuedFieldKind
from src.kernel.core.errors import UnsupportedError, UsageError
from src.kernel.degree.groups import DegreeElement
from src.kernel.tate.presentation import TatePresentation
from src.kernel.tate.series import TateRing, TateSeries

# Логирование
# ====================================================
from src.utils.logger.logger import get_logger
logger = get_logger(__name__)


@dataclass
class RootNorm:
    norm: Optional[DegreeElement]         # None: нулевые корни
    multiplicity: int


@dataclass
class OracleResult:
    distinguished: bool
    comparisons: List[Tuple[str, Optional[DegreeElement], Optional[DegreeElement]]]   # (элемент, фактор-норма, спектральная)
    annulus: bool = False


def _coefficients(f: TateSeries) -> Dict[int, object]:
    return {exps[0]: c for exps, c in f.terms.items()}


def newton_root_norms(ring: TateRing, coefficients: Dict[int, object]) -> List[RootNorm]:
    """Нормы корней многочлена Σ c_j·z^j по мультипликативному многоугольнику Ньютона."""
    field = ring.field
    norms = {j: ring.coefficient_norm(c) for j, c in coefficients.items() if not field.is_zero(c)}
    if not norms:
        raise UsageError("Многоугольник Ньютона нулевого многочлена не определён")
    n = max(norms)
    low = min(norms)
    roots: List[RootNorm] = []
    i = n
    while i > low:
        best_k, best = None, None
        for k in sorted(j for j in norms if j < i):
            slope = (norms[k] / norms[i]) ** Fraction(1, i - k)
            if best is None or slope > best:
                best_k, best = k, slope
        roots.append(RootNorm(best, i - best_k))
        i = best_k
    if low:
        roots.append(RootNorm(None, low))
    return roots


def max_root_norm(ring: TateRing, coefficients: Dict[int, object]) -> Optional[DegreeElement]:
    roots = newton_root_norms(ring, coefficients)
    known = [r.norm for r in roots if r.norm is not None]
    return max(known) if known else None


def _require_weierstrass(f: TateSeries) -> Dict[int, object]:
    ring = f.ring
    if len(ring.symbols) != 1:
        raise UnsupportedError("Оракул Ньютона работает с одной переменной")
    coefficients = _coefficients(f)
    n = max(coefficients)
    if f.term_norm((n,)) != f.gauss_norm():
        raise UnsupportedError(f"{f} не является r-вейерштрассовым: старший член не доминирует")
    return coefficients


def weierstrass_remainder(a: TateSeries, f: TateSeries) -> TateSeries:
    """a mod f делением по старшей степени T."""
    ring = f.ring
    field = ring.field
    coefficients = _require_weierstrass(f)
    n = max(coefficients)
    lead_inverse = field.inverse(coefficients[n])
    p = a
    while not p.is_zero:
        top = max(e[0] for e in p.terms)
        if top < n:
            break
        c = field.mul(p.terms[(top,)], lead_inverse)
        p = (p - f.scale(c, (top - n,))).without((top,))
    return p


def quotient_norm(a: TateSeries, f: TateSeries) -> Optional[DegreeElement]:
    remainder = weierstrass_remainder(a, f)
    return None if remainder.is_zero else remainder.gauss_norm()


def spectral_norm(a: TateSeries, f: TateSeries) -> Optional[DegreeElement]:
    """max |a(α)| по корням α многочлена f."""
    ring = f.ring
    field = ring.field
    if field.kind is ValuedFieldKind.LAURENT:
        raise UnsupportedError("Результант над рядами Лорана не вычисляется точно")
    T = ring.symbols[0]
    z = Dummy("z")
    resultant = sympy.resultant(f.to_expr(), z - a.to_expr(), T)
    poly = Poly(sympy.expand(resultant), z, domain="EX")
    coefficients = {}
    for (j,), c in poly.terms():
        value = field.from_expr(sympy.sympify(c))
        if not field.is_zero(value):
            coefficients[j] = value
    if not coefficients or max(coefficients) == 0:
        return None
    return max_root_norm(ring, coefficients)


def _radical_lift(f: TateSeries) -> Optional[TateSeries]:
    """Подъём радикала f̃¹ при r = 1 (None, если f̃¹ бесквадратен)."""
    ring = f.ring
    field = ring.field
    residue = field.residue
    if not ring.radii[0].is_one() or residue.algebraic:
        return None
    T = ring.symbols[0]
    expr = sum(field.unit_residue(c) * T ** e[0] for e, c in f.top_terms().items())
    options = residue.context((T,)).options()
    poly = Poly(expr, T, **options)
    square_free = Poly(sympy.sqf_part(poly), T, **options)
    if square_free.degree() >= poly.degree():
        return None
    terms = {}
    for (j,), c in square_free.terms():
        terms[(j,)] = field.lift(residue.normalize(c))
    return ring.series(terms)


def _is_annulus(presentation: TatePresentation) -> bool:
    """c·S·T - 1 в k{T/r, S/s} с |c|·r·s = 1."""
    ring = presentation.ring
    if len(ring.symbols) != 2 or len(presentation.relators) != 1:
        return False
    f = presentation.relators[0]
    if set(f.terms) != {(1, 1), (0, 0)}:
        return False
    field = ring.field
    if not field.equal(f.terms[(0, 0)], field.neg(field.one())):
        return False
    return f.term_norm((1, 1)).is_one()


def oracle_is_distinguished(presentation: TatePresentation) -> OracleResult:
    if _is_annulus(presentation):
        logger.debug(f"🔍 {presentation.name}: кольцо Лорана, различимо")
        return OracleResult(True, [], annulus=True)
    if len(presentation.relators) != 1:
        raise UnsupportedError("Оракул Ньютона работает с одним соотношением")
    f = presentation.relators[0]
    coefficients = _require_weierstrass(f)
    n = max(coefficients)
    ring = f.ring
    tests = [ring.monomial(ring.field.one(), (k,)) for k in range(n)]
    lift = _radical_lift(f)
    if lift is not None:
        tests.append(lift)
    comparisons = []
    distinguished = True
    for a in tests:
        q = quotient_norm(a, f)
        s = spectral_norm(a, f)
        comparisons.append((str(a), q, s))
        if q != s:
            distinguished = False
    logger.debug(f"🔍 Оракул Ньютона {presentation.name}: {comparisons}")
    return OracleResult(distinguished, comparisons)
