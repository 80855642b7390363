"""
Минимальные простые идеалы и проверка радикальности.

Схема:
  1. расщепление по разложимым элементам базиса;
  2. максимальное независимое множество U, локализация по U:
     √I = √(I : h^∞) ∩ √(I + h), где h = произведение старших коэффициентов;
  3. нульмерный случай над K(U): минимальные многочлены переменных и линейных
     форм; разложимый даёт расщепление, кратный множитель даёт шаг к радикалу,
     неприводимый степени n = dim_K(K[X]/I) означает, что идеал прост.
"""
import random
from typing import Iterator, List, Optional, Sequence

import sympy
from sympy import Poly

from src.kernel.algebra.context import (
    AlgebraContext,
    LocalizedIdeal,
    independent_set,
    intersect_all,
    leading_parameter_coefficient,
    minimal_polynomial,
    standard_monomial_count,
)
from src.kernel.algebra.factor import factor_polynomial
from src.kernel.core.errors import InconclusiveError
from src.kernel.core.settings import KernelSettings, resolve

# Логирование
# ====================================================
from src.utils.logger.logger import get_logger
logger = get_logger(__name__)


class PrimeSearch:
    """Поиск минимальных простых; случайные формы детерминированы зерном из настроек."""

    def __init__(self, settings: Optional[KernelSettings] = None):
        self.settings = resolve(settings)
        self.rng = random.Random(self.settings.seed)

    # ------------------------
    # Разложение
    # ------------------------
    def factor(self, expr, ctx: AlgebraContext, extra=()):
        gens = tuple(extra) + ctx.gens
        factors = factor_polynomial(expr, gens, ctx.characteristic, self.settings.factor_cap)
        keep = set(ctx.variables) | set(extra)
        return [(f, m) for f, m in factors if f.free_symbols & keep]

    def split_by_factors(self, ideal: LocalizedIdeal) -> Optional[List[LocalizedIdeal]]:
        for g in ideal.basis:
            factors = self.factor(g, ideal.context)
            if len(factors) > 1:
                return [ideal.add([f]) for f, _ in factors]
            if len(factors) == 1 and factors[0][1] > 1:
                return [ideal.add([factors[0][0]])]
        return None

    # ------------------------
    # Общий случай
    # ------------------------
    def primes(self, ideal: LocalizedIdeal) -> List[LocalizedIdeal]:
        """Простые, пересечение которых равно √I (возможно, с неминимальными)."""
        if ideal.is_unit:
            return []
        split = self.split_by_factors(ideal)
        if split is not None:
            return [p for part in split for p in self.primes(part)]

        ctx = ideal.context
        dim, free = independent_set(ideal)
        if dim == 0:
            return self.zero_dimensional(ideal)

        local_ctx = ctx.localize(free)
        found = [
            LocalizedIdeal(ctx, p.basis, saturated=True)
            for p in self.zero_dimensional(LocalizedIdeal(local_ctx, ideal.basis))
        ]
        h = sympy.Integer(1)
        for g in local_ctx.groebner(ideal.basis):
            lc = leading_parameter_coefficient(local_ctx, g)
            if lc.free_symbols & set(free):
                h = h * lc
        if h.free_symbols & set(free):
            found.extend(self.primes(ideal.add([sympy.expand(h)])))
        return found

    # ------------------------
    # Нульмерный случай
    # ------------------------
    def zero_dimensional(self, ideal: LocalizedIdeal) -> List[LocalizedIdeal]:
        ctx = ideal.context
        while True:
            if ideal.is_unit:
                return []
            split = self.split_by_factors(ideal)
            if split is not None:
                return [p for part in split for p in self.zero_dimensional(part)]
            changed = False
            for v in ctx.variables:
                outcome = self._apply_form(ideal, v)
                if isinstance(outcome, list):
                    return outcome
                if outcome is not None:
                    ideal = outcome
                    changed = True
                    break
            if not changed:
                break

        n = standard_monomial_count(ideal)
        if n <= 1:
            return [ideal]
        for form in self._forms(ctx):
            g, z = minimal_polynomial(ideal, form)
            factors = self.factor(g, ctx, extra=(z,))
            if len(factors) > 1:
                return [p for f, _ in factors for p in self.zero_dimensional(ideal.add([f.subs(z, form)]))]
            f, mult = factors[0]
            if mult > 1:
                return self.zero_dimensional(ideal.add([f.subs(z, form)]))
            if Poly(f, z).degree() == n:
                return [ideal]
        raise InconclusiveError(
            f"Не найден примитивный элемент за {self.settings.primitive_retries} попыток (n = {n})"
        )

    def _apply_form(self, ideal: LocalizedIdeal, form):
        """Разложимый минимальный многочлен: список простых; кратный множитель: новый идеал; иначе None."""
        ctx = ideal.context
        g, z = minimal_polynomial(ideal, form)
        factors = self.factor(g, ctx, extra=(z,))
        if len(factors) > 1:
            return [p for f, _ in factors for p in self.zero_dimensional(ideal.add([f.subs(z, form)]))]
        if factors and factors[0][1] > 1:
            return ideal.add([factors[0][0].subs(z, form)])
        return None

    def _forms(self, ctx: AlgebraContext) -> Iterator[sympy.Expr]:
        variables = list(ctx.variables)
        for v in variables:
            yield v
        for i in range(len(variables)):
            for j in range(i + 1, len(variables)):
                yield variables[i] + variables[j]
                yield variables[i] - variables[j]
        top = ctx.characteristic - 1 if ctx.characteristic else 12
        for attempt in range(self.settings.primitive_retries):
            form = sum(self.rng.randint(1, max(1, top)) * v for v in variables)
            if ctx.characteristic and attempt % 2 == 1 and len(variables) > 1:
                # над малым F_p линейных форм может не хватать
                a, b = self.rng.sample(variables, 2)
                form += self.rng.randint(1, max(1, top)) * a * b
            yield form


# ====================================================
# Публичные функции
# ====================================================
def _sort_key(ideal: LocalizedIdeal):
    return tuple(sympy.default_sort_key(g) for g in ideal.basis)


def deduplicate_minimal(candidates: Sequence[LocalizedIdeal]) -> List[LocalizedIdeal]:
    unique: List[LocalizedIdeal] = []
    for p in candidates:
        if not any(q.equals(p) for q in unique):
            unique.append(p)
    minimal = [p for p in unique if not any(q is not p and p.contains_ideal(q) for q in unique)]
    return sorted(minimal, key=_sort_key)


def minimal_primes(ideal: LocalizedIdeal, settings: Optional[KernelSettings] = None) -> List[LocalizedIdeal]:
    search = PrimeSearch(settings)
    candidates = search.primes(ideal)
    primes = deduplicate_minimal(candidates)
    logger.debug(f"📊 Минимальных простых: {len(primes)} (кандидатов {len(candidates)})")
    return primes


def radical(ideal: LocalizedIdeal, settings: Optional[KernelSettings] = None) -> LocalizedIdeal:
    primes = minimal_primes(ideal, settings)
    if not primes:
        return LocalizedIdeal(ideal.context, [1])
    return intersect_all(primes, ideal.context)


def is_radical(ideal: LocalizedIdeal, settings: Optional[KernelSettings] = None) -> bool:
    if ideal.is_unit or ideal.is_zero:
        return True
    return ideal.contains_ideal(radical(ideal, settings))
