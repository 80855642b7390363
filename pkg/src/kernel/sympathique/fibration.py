"""
Редукция относительного представления: p: Spec Ã[r\\T]/(ã_1..ã_m) → Spec Ã.

Проверяемые точки Spec Ã:
  - минимальные простые Ã (общие точки);
  - редукции выбранных точек слоёв x (S̃ - x̃(S) или S̃ при |x(S)| < s);
  - точки-кандидаты: неприводимые множители исключения идеала
    (ã, миноры якобиана по T) ∩ k̃[S] (только для одной переменной базы
    и тривиальной градуировки), то есть точки возможной неприведённости слоя.
"""
import threading
from dataclasses import dataclass
from itertools import combinations
from typing import List, Optional, Tuple

import sympy
from sympy import Matrix, Symbol

from src.kernel.algebra.context import AlgebraContext
from src.kernel.algebra.factor import factor_polynomial
from src.kernel.core.enums import Verdict
from src.kernel.core.errors import UsageError
from src.kernel.core.settings import KernelSettings, resolve
from src.kernel.corpoid.translation import ArithmeticTranslation
from src.kernel.ideal.geometric import imperfect_parameters
from src.kernel.ideal.graded_ideal import GradedIdeal, dimension_over, fiber_ring, is_reduced, minimal_primes
from src.kernel.tate.presentation import reduce_series

# Логирование
# ====================================================
from src.utils.logger.logger import get_logger
logger = get_logger(__name__)


@dataclass
class ListedPoint:
    label: str
    ideal: GradedIdeal          # идеал точки в Ã[r\T] (только переменные S)
    origin: str                 # "generic" | "sample" | "candidate"


@dataclass
class ListedFiber:
    point: ListedPoint
    ideal: GradedIdeal


@dataclass
class Flatness:
    verdict: Verdict
    witness: Optional[str] = None
    reason: str = ""


def fiber_extensions(ideal: GradedIdeal) -> List[Tuple[Symbol, sympy.Expr]]:
    """Корни p-й степени из несовершенных параметров поля коэффициентов слоя."""
    parameters = imperfect_parameters(ideal)
    if not parameters:
        return []
    p = ideal.ring.corpoid.base.characteristic
    return [(Symbol(f"σ_{s}"), Symbol(f"σ_{s}") ** p - s) for s in parameters]


class ResidueFibration:
    def __init__(self, presentation, settings: Optional[KernelSettings] = None):
        self.presentation = presentation
        self.settings = resolve(settings)
        self.ring = presentation.total_ring.residue_ring()
        self.base_symbols = presentation.base_symbols
        self.fiber_symbols = presentation.fiber_symbols
        self.base_reductions = [reduce_series(a, self.ring) for a in presentation.base_relators]
        self.relative_reductions = [reduce_series(a, self.ring) for a in presentation.relators]
        self.base_ideal = GradedIdeal(self.ring, self.base_reductions)
        self.total_ideal = GradedIdeal(self.ring, self.base_reductions + self.relative_reductions)
        self._lock = threading.Lock()
        self._points: Optional[List[ListedPoint]] = None
        self._fibers: Optional[List[ListedFiber]] = None
        logger.debug(f"🔍 Редукция {presentation.name}: {self.total_ideal.describe()} над {self.base_ideal.describe()}")

    # ------------------------
    # Точки базы
    # ------------------------
    def _sample_point(self, point) -> ListedPoint:
        field = self.presentation.total_ring.field
        corpoid = self.ring.corpoid
        generators = []
        for (symbol, value), radius in zip(point.values, self.presentation.base.ring.radii):
            S = self.ring.variable(symbol)
            size = field.norm(value)
            if size is not None and self.ring.group.coerce(size) == self.ring.group.coerce(radius):
                S = S - self.ring.constant(field.residue_coefficient(value, corpoid))
            generators.append(S)
        ideal = GradedIdeal(self.ring, generators)
        return ListedPoint(ideal.describe(), ideal, "sample")

    def _candidate_points(self) -> List[ListedPoint]:
        if len(self.base_symbols) != 1 or not self.relative_reductions:
            return []
        base = self.ring.corpoid.base
        if base.symbols or any(not d.is_one() for d in self.ring.degrees):
            return []
        translation = ArithmeticTranslation(self.ring)
        exprs = [translation.expr(g) for g in self.relative_reductions]
        size = min(len(exprs), len(self.fiber_symbols))
        jacobian = Matrix([[sympy.diff(e, T) for T in self.fiber_symbols] for e in exprs])
        minors = []
        for rows in combinations(range(len(exprs)), size):
            for cols in combinations(range(len(self.fiber_symbols)), size):
                minors.append(sympy.expand(jacobian.extract(list(rows), list(cols)).det()))
        ctx = AlgebraContext(base.characteristic, self.fiber_symbols + self.base_symbols, self.ring.corpoid.section_symbols)
        basis = ctx.groebner(exprs + minors + [translation.expr(g) for g in self.base_reductions])
        eliminant = [g for g in basis if g.free_symbols and g.free_symbols <= set(self.base_symbols)]
        if not eliminant:
            return []
        points = []
        for factor, _ in factor_polynomial(eliminant[0], self.base_symbols, base.characteristic, self.settings.factor_cap):
            try:
                ideal = GradedIdeal.from_exprs(self.ring, [factor])
            except UsageError:
                continue
            points.append(ListedPoint(f"({factor})", ideal, "candidate"))
        logger.debug(f"📊 Точки-кандидаты неприведённости: {[p.label for p in points]}")
        return points

    @property
    def points(self) -> List[ListedPoint]:
        if self._points is None:
            with self._lock:
                if self._points is None:
                    self._points = self._collect_points()
        return self._points

    def _collect_points(self) -> List[ListedPoint]:
        points: List[ListedPoint] = []
        if not self.base_symbols:
            points.append(ListedPoint("(0)", GradedIdeal(self.ring, []), "generic"))
        else:
            for prime in minimal_primes(self.base_ideal, self.settings):
                points.append(ListedPoint(prime.describe(), prime, "generic"))
            points += [self._sample_point(x) for x in self.presentation.points]
            points += self._candidate_points()
        unique: List[ListedPoint] = []
        for point in points:
            if not any(point.ideal.equals(other.ideal) for other in unique):
                unique.append(point)
        return unique

    @property
    def base_is_finite(self) -> bool:
        """Spec Ã конечен: нет переменных базы, Ã = 0 или Ã нульмерно."""
        if not self.base_symbols or self.base_ideal.is_unit:
            return True
        return dimension_over(self.base_ideal) - len(self.fiber_symbols) <= 0

    # ------------------------
    # Слои
    # ------------------------
    def fiber(self, point: ListedPoint) -> GradedIdeal:
        if not self.base_symbols:
            return self.total_ideal
        return fiber_ring(self.total_ideal, self.base_symbols, point.ideal)

    @property
    def fibers(self) -> List[ListedFiber]:
        if self._fibers is None:
            points = self.points
            with self._lock:
                if self._fibers is None:
                    self._fibers = [ListedFiber(p, self.fiber(p)) for p in points]
        return self._fibers

    # ------------------------
    # Плоскость
    # ------------------------
    def flatness(self) -> Flatness:
        """
        Над корпоидом и над нульмерной приведённой базой плоскость автоматическая.
        Над k̃[S] (одна переменная, без соотношений базы) плоскость равна
        отсутствию кручения: сужение I·k̃(S)[T] совпадает с I. Иначе проверяется
        только постоянство размерности непустых перечисленных слоёв.
        """
        if not self.base_symbols:
            return Flatness(Verdict.PASS, reason="база: корпоид")
        if self.base_is_finite and is_reduced(self.base_ideal, self.settings):
            return Flatness(Verdict.PASS, reason="база нульмерна и приведена")
        if len(self.base_symbols) == 1 and not self.base_reductions:
            generic = GradedIdeal(self.ring, list(self.total_ideal.generators), localized=self.base_symbols)
            total = self.total_ideal.arithmetic
            for g in generic.arithmetic.basis:
                if not total.contains(g):
                    logger.info(f"❌ Кручение над {self.base_ideal.ring.corpoid.base.name}[S]: {g}")
                    return Flatness(Verdict.FAIL, witness=str(g), reason="элемент кручения")
            return Flatness(Verdict.PASS, reason="нет кручения над главной базой")
        dimensions = {}
        for fiber in self.fibers:
            if fiber.ideal.is_unit:
                continue
            dimensions[fiber.point.label] = dimension_over(fiber.ideal)
        if len(set(dimensions.values())) > 1:
            return Flatness(Verdict.FAIL, witness=str(dimensions), reason="размерность слоёв непостоянна")
        return Flatness(Verdict.INCONCLUSIVE, reason="форма базы не позволяет решить плоскость")
