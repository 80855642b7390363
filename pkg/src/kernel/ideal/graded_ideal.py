"""
Однородные идеалы градуированных колец многочленов над корпоидом.

Все решения принимаются по арифметическому переводу (сечения и параметры
обращены). Для слоёв над неточечными простыми часть переменных базы
локализуется (становится параметрами κ(ξ)), а оставшиеся переменные базы
образуют конечное расширение поля коэффициентов.
"""
import threading
from typing import List, Optional, Sequence, Tuple

import sympy
from sympy import Symbol

from src.kernel.algebra import primes as prime_tools
from src.kernel.algebra.context import (
    AlgebraContext,
    LocalizedIdeal,
    independent_set,
    intersect,
    quotient as ideal_quotient,
    saturate as ideal_saturate,
    standard_monomial_count,
)
from src.kernel.core.errors import UsageError
from src.kernel.core.settings import KernelSettings, resolve
from src.kernel.corpoid.polynomial import GradedPolynomial, GradedPolynomialRing
from src.kernel.corpoid.translation import ArithmeticTranslation, LaurentTranslation

# Логирование
# ====================================================
from src.utils.logger.logger import get_logger
logger = get_logger(__name__)


class GradedIdeal:
    def __init__(
        self,
        ring: GradedPolynomialRing,
        generators: Sequence[GradedPolynomial],
        *,
        localized: Sequence[Symbol] = (),
        coefficient_variables: Sequence[Symbol] = (),
        arithmetic: Optional[LocalizedIdeal] = None,
    ):
        for g in generators:
            if g.ring != ring:
                raise UsageError(f"Образующая {g} не лежит в кольце {ring}")
        self.ring = ring
        self.generators: Tuple[GradedPolynomial, ...] = tuple(g for g in generators if not g.is_zero)
        self.localized: Tuple[Symbol, ...] = tuple(localized)
        self.coefficient_variables: Tuple[Symbol, ...] = tuple(coefficient_variables)
        self._arithmetic = arithmetic
        self._geometric: Optional[LocalizedIdeal] = None
        self._lock = threading.Lock()

    # ==========================
    # Factory methods
    # ==========================
    @classmethod
    def from_exprs(cls, ring: GradedPolynomialRing, exprs: Sequence, **kwargs) -> "GradedIdeal":
        return cls(ring, [ring.from_expr(e) for e in exprs], **kwargs)

    def _derived(self, arithmetic: LocalizedIdeal) -> "GradedIdeal":
        """Идеал того же кольца по готовому сужению (образующие: его базис)."""
        translation = ArithmeticTranslation(self.ring)
        return GradedIdeal(
            self.ring,
            translation.back(arithmetic.basis),
            localized=self.localized,
            coefficient_variables=self.coefficient_variables,
            arithmetic=arithmetic,
        )

    # ------------------------
    # Переводы
    # ------------------------
    @property
    def arithmetic(self) -> LocalizedIdeal:
        if self._arithmetic is None:
            with self._lock:
                if self._arithmetic is None:
                    translation = ArithmeticTranslation(self.ring)
                    ideal = translation.ideal(self.generators)
                    if self.localized:
                        ideal = LocalizedIdeal(ideal.context.localize(self.localized), ideal.generators)
                    self._arithmetic = ideal
        return self._arithmetic

    @property
    def geometric(self) -> LocalizedIdeal:
        """Вид над F¹ после снятия мономов Лорана (сечения = 1)."""
        if self._geometric is None:
            with self._lock:
                if self._geometric is None:
                    ideal = LaurentTranslation(self.ring).ideal(self.generators)
                    if self.localized:
                        ideal = LocalizedIdeal(ideal.context.localize(self.localized), ideal.generators)
                    self._geometric = ideal
        return self._geometric

    @property
    def context(self) -> AlgebraContext:
        return self.arithmetic.context

    @property
    def true_variables(self) -> Tuple[Symbol, ...]:
        """Переменные слоя (без переменных базы, вошедших в поле коэффициентов)."""
        skip = set(self.localized) | set(self.coefficient_variables)
        return tuple(s for s in self.ring.symbols if s not in skip)

    def coefficient_degree(self, geometric: bool = False) -> int:
        """Степень поля коэффициентов над P(параметры): F¹ и, для слоёв, κ(ξ)."""
        source = self.geometric if geometric else self.arithmetic
        ctx = source.context
        keep = set(self.coefficient_variables) | set(self.ring.corpoid.base.algebraic)
        inner = AlgebraContext(ctx.characteristic, tuple(v for v in ctx.variables if v in keep), ctx.parameters)
        coefficient_vars = set(self.coefficient_variables)
        relations = [
            g for g in source.generators
            if not (g.free_symbols & (set(ctx.variables) - keep)) and g.free_symbols & (coefficient_vars | keep)
        ]
        if not inner.variables:
            return 1
        return standard_monomial_count(LocalizedIdeal(inner, relations))

    # ------------------------
    # Базовые свойства
    # ------------------------
    @property
    def is_unit(self) -> bool:
        return self.arithmetic.is_unit

    def contains(self, f: GradedPolynomial) -> bool:
        return self.arithmetic.contains(ArithmeticTranslation(self.ring).expr(f))

    def contains_ideal(self, other: "GradedIdeal") -> bool:
        return self.arithmetic.contains_ideal(other.arithmetic)

    def equals(self, other: "GradedIdeal") -> bool:
        return self.arithmetic.equals(other.arithmetic)

    def add(self, extra: Sequence[GradedPolynomial]) -> "GradedIdeal":
        return GradedIdeal(
            self.ring, list(self.generators) + list(extra),
            localized=self.localized, coefficient_variables=self.coefficient_variables,
        )

    def describe(self) -> str:
        if self.is_unit:
            return "(1)"
        gens = [g for g in self.generators if not _is_ring_relation(self.ring, g)]
        return "(" + ", ".join(str(g) for g in gens) + ")" if gens else "(0)"

    def __repr__(self):
        return self.describe()


def _is_ring_relation(ring: GradedPolynomialRing, g: GradedPolynomial) -> bool:
    expr = g.to_expr()
    return any(sympy.expand(expr - r) == 0 for r in ring.relations())


# ====================================================
# Операции
# ====================================================
def groebner(ideal: GradedIdeal) -> List[sympy.Expr]:
    """Приведённый базис сужения в grevlex (переменные кольца, затем параметры)."""
    arith = ideal.arithmetic
    if arith.is_unit:
        return [sympy.Integer(1)]
    if arith.is_zero:
        return []
    ctx = arith.context
    basis = sympy.groebner(list(arith.basis), *ctx.gens, order="grevlex", **ctx.options())
    return [ctx.normalize(g) for g in basis.exprs]


def is_reduced(ideal: GradedIdeal, settings: Optional[KernelSettings] = None) -> bool:
    return prime_tools.is_radical(ideal.arithmetic, resolve(settings))


def radical(ideal: GradedIdeal, settings: Optional[KernelSettings] = None) -> GradedIdeal:
    return ideal._derived(prime_tools.radical(ideal.arithmetic, resolve(settings)))


def minimal_primes(ideal: GradedIdeal, settings: Optional[KernelSettings] = None) -> List[GradedIdeal]:
    primes = prime_tools.minimal_primes(ideal.arithmetic, resolve(settings))
    return [ideal._derived(p) for p in primes]


def dimension_over(ideal: GradedIdeal) -> int:
    """Размерность Крулля над полем коэффициентов; у единичного идеала её нет."""
    if ideal.is_unit:
        raise UsageError(f"Размерность единичного идеала {ideal.describe()} не определена")
    return independent_set(ideal.arithmetic)[0]


def intersect_ideals(first: GradedIdeal, second: GradedIdeal) -> GradedIdeal:
    return first._derived(intersect(first.arithmetic, second.arithmetic))


def saturate(ideal: GradedIdeal, f: GradedPolynomial) -> GradedIdeal:
    return ideal._derived(ideal_saturate(ideal.arithmetic, ArithmeticTranslation(ideal.ring).expr(f)))


def quotient(ideal: GradedIdeal, f: GradedPolynomial) -> GradedIdeal:
    return ideal._derived(ideal_quotient(ideal.arithmetic, ArithmeticTranslation(ideal.ring).expr(f)))


def base_context(ring: GradedPolynomialRing, base_variables: Sequence[Symbol]) -> AlgebraContext:
    base = ring.corpoid.base
    inner = base.context(base_variables)
    return AlgebraContext(base.characteristic, inner.variables, tuple(ring.corpoid.section_symbols) + base.parameters)


def fiber_ring(total: GradedIdeal, base_variables: Sequence[Symbol], point: GradedIdeal) -> GradedIdeal:
    """
    Слой κ(ξ) ⊗ B отображения Spec B → Spec A, A = F[S]/J, B = A[T]/I.
    ξ задаётся простым идеалом от переменных S; нужно ξ ⊇ J (точка базы).
    """
    base_variables = tuple(Symbol(str(s)) for s in base_variables)
    fiber_symbols = set(total.ring.symbols) - set(base_variables)
    ctx = base_context(total.ring, base_variables)
    point_exprs = [ArithmeticTranslation(point.ring).expr(g) for g in point.generators]
    for e in point_exprs:
        if e.free_symbols & fiber_symbols:
            raise UsageError(f"Точка базы {point} содержит переменные слоя")
    xi = LocalizedIdeal(ctx, point_exprs + list(total.ring.corpoid.base.relations))
    if xi.is_unit:
        raise UsageError(f"Точка {point} задаёт единичный идеал")
    translation = ArithmeticTranslation(total.ring)
    base_part = [
        translation.expr(g) for g in total.generators
        if not (g.to_expr().free_symbols & fiber_symbols)
    ]
    if not all(xi.contains(e) for e in base_part):
        raise UsageError(f"Точка {point} не лежит в спектре базы")
    _, free = independent_set(xi)
    coefficient_vars = tuple(s for s in base_variables if s not in set(free))
    generators = list(total.generators) + [g for g in point.generators]
    fiber = GradedIdeal(total.ring, generators, localized=free, coefficient_variables=coefficient_vars)
    logger.debug(f"🔍 Слой над {point}: локализованы {list(map(str, free))}, поле коэффициентов {list(map(str, coefficient_vars))}")
    return fiber
