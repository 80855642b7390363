"""
Связные компоненты Spec(K[X]/I) через идемпотенты.

Минимальные простые делятся на классы связности (P_i + P_j ≠ (1)).
Для класса c идемпотент по модулю радикала берётся из ideal
t·J_c + (1 - t)·J_rest: в нём лежит t - b, где b ≡ 1 mod J_c, b ∈ J_rest.
Подъём до идемпотента по модулю I: итерация Ньютона e ← 3e² - 2e³.
"""
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import sympy
from sympy import Dummy

from src.kernel.algebra import primes as prime_tools
from src.kernel.algebra.context import (
    LocalizedIdeal,
    independent_set,
    intersect_all,
    leading_parameter_coefficient,
    leading_variable_exponent,
)
from src.kernel.core.errors import InconclusiveError, UsageError
from src.kernel.core.settings import KernelSettings, resolve
from src.kernel.ideal.graded_ideal import GradedIdeal

# Логирование
# ====================================================
from src.utils.logger.logger import get_logger
logger = get_logger(__name__)

NEWTON_STEPS = 12


@dataclass
class Idempotent:
    """e = numerator / denominator, denominator ∈ P[параметры]."""
    numerator: sympy.Expr
    denominator: sympy.Expr
    primes: List[LocalizedIdeal] = field(default_factory=list)

    def as_expr(self) -> sympy.Expr:
        return sympy.cancel(self.numerator / self.denominator)

    def __repr__(self):
        return str(self.as_expr())


class ComponentSearch:
    def __init__(self, ideal: LocalizedIdeal, settings: Optional[KernelSettings] = None):
        self.ideal = ideal
        self.settings = resolve(settings)
        self.context = ideal.context

    # ------------------------
    # Классы связности
    # ------------------------
    def classes(self, primes: Sequence[LocalizedIdeal]) -> List[List[int]]:
        parent = list(range(len(primes)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for i in range(len(primes)):
            for j in range(i + 1, len(primes)):
                if not primes[i].add(primes[j].basis).is_unit:
                    parent[find(i)] = find(j)
        groups = {}
        for i in range(len(primes)):
            groups.setdefault(find(i), []).append(i)
        return sorted(groups.values())

    # ------------------------
    # Идемпотенты
    # ------------------------
    def separating_element(self, inside: LocalizedIdeal, outside: LocalizedIdeal) -> Tuple[sympy.Expr, sympy.Expr]:
        """(r, h): r/h ≡ 1 mod inside, r/h ∈ outside."""
        t = Dummy("t")
        ctx = self.context.with_variables([t], front=True)
        mixed = [t * f for f in inside.basis] + [(1 - t) * g for g in outside.basis]
        tagged = LocalizedIdeal(ctx, mixed)
        target = (1,) + (0,) * len(self.context.variables)
        for g in tagged.basis:
            if leading_variable_exponent(ctx, g) == target:
                h = leading_parameter_coefficient(ctx, g)
                r = ctx.normalize(h * t - g)
                return r, h
        raise UsageError(f"Идеалы {inside} и {outside} не комаксимальны")

    def lift(self, numerator, denominator) -> Tuple[sympy.Expr, sympy.Expr]:
        """Ньютон e ← 3e² - 2e³ до e² - e ∈ I."""
        ctx = self.context
        num, den = numerator, denominator
        for _ in range(NEWTON_STEPS):
            if self.ideal.contains(ctx.normalize(num * num - num * den)):
                return num, den
            num = ctx.normalize(3 * num ** 2 * den - 2 * num ** 3)
            den = ctx.normalize(den ** 3)
            num = self._reduce(num)
        raise InconclusiveError(f"Итерация Ньютона не сошлась за {NEWTON_STEPS} шагов")

    def _reduce(self, expr) -> sympy.Expr:
        if self.ideal.is_zero or self.ideal.is_unit:
            return expr
        ctx = self.context
        _, remainder = sympy.reduced(expr, list(self.ideal.basis), *ctx.gens, order="lex", **ctx.options())
        return ctx.normalize(remainder)

    def run(self) -> List[Idempotent]:
        ideal = self.ideal
        if ideal.is_unit:
            return []
        dim, _ = independent_set(ideal)
        if dim > self.settings.dim_bound:
            raise InconclusiveError(f"Размерность {dim} больше DIM_BOUND = {self.settings.dim_bound}")
        primes = prime_tools.minimal_primes(ideal, self.settings)
        groups = self.classes(primes)
        if len(groups) == 1:
            return [Idempotent(sympy.Integer(1), sympy.Integer(1), list(primes))]
        result = []
        for group in groups:
            inside = intersect_all([primes[i] for i in group], self.context)
            outside = intersect_all([primes[i] for i in range(len(primes)) if i not in group], self.context)
            r, h = self.separating_element(inside, outside)
            num, den = self.lift(r, h)
            result.append(Idempotent(num, den, [primes[i] for i in group]))
        self.verify(result)
        logger.debug(f"📊 Связных компонент: {len(result)}")
        return result

    def verify(self, idempotents: Sequence[Idempotent]):
        ctx = self.context
        den = sympy.Integer(1)
        for e in idempotents:
            den = den * e.denominator
        total = sympy.Integer(0)
        for e in idempotents:
            total += e.numerator * sympy.cancel(den / e.denominator)
        if not self.ideal.contains(ctx.normalize(total - den)):
            raise UsageError("Сумма идемпотентов компонент не равна 1")
        for i in range(len(idempotents)):
            for j in range(i + 1, len(idempotents)):
                product = ctx.normalize(idempotents[i].numerator * idempotents[j].numerator)
                if not self.ideal.contains(product):
                    raise UsageError("Идемпотенты разных компонент не ортогональны")


def connected_components(ideal: GradedIdeal, settings: Optional[KernelSettings] = None) -> List[Idempotent]:
    """Полная система ортогональных идемпотентов; у идеала без точек: пустой список."""
    return ComponentSearch(ideal.arithmetic, settings).run()


def local_components(ideal: LocalizedIdeal, settings: Optional[KernelSettings] = None) -> List[Idempotent]:
    return ComponentSearch(ideal, settings).run()
