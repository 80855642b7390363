"""
Идеалы в K[X], K = Frac(P[параметры]), P = Q или F_p, поверх sympy.groebner.

Идеал хранится образующими из P[X, параметры]; его базис: приведённый
лексикографический базис Грёбнера сужения I·K[X] ∩ P[X, параметры]
(насыщение по произведению старших коэффициентов), порядок X ≫ параметры.
Все решения о принадлежности, равенстве и размерности принимаются по этому базису.
"""
import threading
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import sympy
from sympy import Dummy, Poly, groebner

from src.kernel.core.errors import InconclusiveError, UsageError

# Логирование
# ====================================================
from src.utils.logger.logger import get_logger
logger = get_logger(__name__)


@dataclass(frozen=True)
class AlgebraContext:
    """Кольцо P[variables] ⊗ Frac(P[parameters]); порядок переменных задаёт лексикографический порядок."""
    characteristic: int
    variables: Tuple[sympy.Symbol, ...]
    parameters: Tuple[sympy.Symbol, ...] = ()

    @property
    def gens(self) -> Tuple[sympy.Symbol, ...]:
        return self.variables + self.parameters

    def options(self) -> dict:
        if self.characteristic:
            return {"modulus": self.characteristic}
        return {"domain": "QQ"}

    def localize(self, symbols: Iterable[sympy.Symbol]) -> "AlgebraContext":
        """Переносит переменные symbols в параметры (обращение P[symbols]∖0)."""
        moved = [v for v in self.variables if v in set(symbols)]
        return AlgebraContext(
            self.characteristic,
            tuple(v for v in self.variables if v not in set(moved)),
            tuple(moved) + self.parameters,
        )

    def with_variables(self, extra: Sequence[sympy.Symbol], front: bool = False) -> "AlgebraContext":
        variables = tuple(extra) + self.variables if front else self.variables + tuple(extra)
        return AlgebraContext(self.characteristic, variables, self.parameters)

    def normalize(self, expr) -> sympy.Expr:
        """Раскрывает скобки; в характеристике p приводит рациональные коэффициенты по модулю p."""
        expr = sympy.expand(sympy.sympify(expr))
        p = self.characteristic
        if not p or expr == 0:
            return expr
        terms = []
        for monomial, coeff in expr.as_coefficients_dict().items():
            coeff = sympy.Rational(coeff)
            residue = (int(coeff.p) * pow(int(coeff.q), -1, p)) % p
            if residue:
                terms.append(residue * monomial)
        return sympy.Add(*terms)

    def poly(self, expr, *extra) -> Poly:
        return Poly(expr, *(tuple(extra) + self.gens), **self.options())

    def groebner(self, exprs, *front) -> List[sympy.Expr]:
        """Приведённый лексикографический базис с дополнительными переменными front впереди."""
        exprs = [e for e in exprs if e != 0]
        if not exprs:
            return []
        basis = groebner(exprs, *(tuple(front) + self.gens), order="lex", **self.options())
        return list(basis.exprs)


class LocalizedIdeal:
    """
    Идеал I·K[X]. Базис сужения вычисляется один раз (ленивое идемпотентное заполнение
    под блокировкой), поэтому объект безопасно читать из нескольких потоков.
    """

    def __init__(self, context: AlgebraContext, generators: Iterable, *, saturated: bool = False):
        self.context = context
        gens = [context.normalize(g) for g in generators]
        self.generators: Tuple[sympy.Expr, ...] = tuple(g for g in gens if g != 0)
        self._saturated = saturated
        self._basis: Optional[Tuple[sympy.Expr, ...]] = None
        self._lock = threading.Lock()

    # ------------------------
    # Сужение (насыщение по старшим коэффициентам)
    # ------------------------
    @property
    def basis(self) -> Tuple[sympy.Expr, ...]:
        if self._basis is None:
            with self._lock:
                if self._basis is None:
                    self._basis = tuple(self._compute_basis())
        return self._basis

    def _compute_basis(self) -> List[sympy.Expr]:
        ctx = self.context
        if not self.generators:
            return []
        basis = ctx.groebner(self.generators)
        if self._has_parameter_element(basis):
            return [sympy.Integer(1)]
        if self._saturated or not ctx.parameters:
            return basis
        h = sympy.Integer(1)
        for g in basis:
            lc = leading_parameter_coefficient(ctx, g)
            if lc.free_symbols:
                h = h * lc
        if not h.free_symbols:
            return basis
        saturated = _saturate_exprs(ctx, basis, sympy.expand(h))
        logger.debug(f"🔍 Насыщение: {len(basis)} -> {len(saturated)} образующих")
        return saturated

    def _has_parameter_element(self, basis) -> bool:
        variables = set(self.context.variables)
        return any(not (g.free_symbols & variables) for g in basis)

    # ------------------------
    # Свойства
    # ------------------------
    @property
    def is_unit(self) -> bool:
        return list(self.basis) == [sympy.Integer(1)]

    @property
    def is_zero(self) -> bool:
        return not self.basis

    def contains(self, f) -> bool:
        f = self.context.normalize(f)
        if f == 0 or self.is_unit:
            return True
        if self.is_zero:
            return False
        _, remainder = sympy.reduced(f, list(self.basis), *self.context.gens, order="lex", **self.context.options())
        return self.context.normalize(remainder) == 0

    def contains_ideal(self, other: "LocalizedIdeal") -> bool:
        return all(self.contains(g) for g in other.basis)

    def equals(self, other: "LocalizedIdeal") -> bool:
        return self.contains_ideal(other) and other.contains_ideal(self)

    def add(self, extra: Iterable) -> "LocalizedIdeal":
        return LocalizedIdeal(self.context, list(self.basis) + list(extra))

    def in_context(self, context: AlgebraContext) -> "LocalizedIdeal":
        """То же множество образующих в другом контексте (например, после локализации)."""
        return LocalizedIdeal(context, self.basis)

    def leading_variable_monomials(self) -> List[Tuple[int, ...]]:
        return [leading_variable_exponent(self.context, g) for g in self.basis]

    def __repr__(self):
        return "(" + ", ".join(str(g) for g in self.basis) + ")"


# ====================================================
# Вспомогательные операции
# ====================================================
def _variable_key(ctx: AlgebraContext, monom: Tuple[int, ...]) -> Tuple[int, ...]:
    return monom[: len(ctx.variables)]


def leading_variable_exponent(ctx: AlgebraContext, g) -> Tuple[int, ...]:
    poly = ctx.poly(g)
    return max(_variable_key(ctx, m) for m in poly.monoms())


def leading_parameter_coefficient(ctx: AlgebraContext, g) -> sympy.Expr:
    """Коэффициент при старшем мономе по переменным X: элемент P[параметры]."""
    poly = ctx.poly(g)
    nvars = len(ctx.variables)
    top = max(m[:nvars] for m in poly.monoms())
    coeff = sympy.Integer(0)
    for monom, c in poly.terms():
        if monom[:nvars] == top:
            coeff += c * sympy.Mul(*[p ** e for p, e in zip(ctx.parameters, monom[nvars:])])
    return ctx.normalize(coeff)


def _saturate_exprs(ctx: AlgebraContext, exprs, h) -> List[sympy.Expr]:
    y = Dummy("y")
    basis = ctx.groebner(list(exprs) + [y * h - 1], y)
    return [g for g in basis if not g.has(y)]


def saturate(ideal: LocalizedIdeal, f) -> LocalizedIdeal:
    """I : f^∞."""
    ctx = ideal.context
    f = ctx.normalize(f)
    if f == 0:
        return LocalizedIdeal(ctx, [1])
    if ideal.is_unit or ideal.is_zero:
        return ideal
    return LocalizedIdeal(ctx, _saturate_exprs(ctx, ideal.basis, f))


def intersect(first: LocalizedIdeal, second: LocalizedIdeal) -> LocalizedIdeal:
    ctx = first.context
    if first.is_unit:
        return second
    if second.is_unit:
        return first
    if first.is_zero or second.is_zero:
        return LocalizedIdeal(ctx, [])
    t = Dummy("t")
    mixed = [t * f for f in first.basis] + [(1 - t) * g for g in second.basis]
    basis = ctx.groebner(mixed, t)
    return LocalizedIdeal(ctx, [g for g in basis if not g.has(t)], saturated=True)


def intersect_all(ideals: Sequence[LocalizedIdeal], context: AlgebraContext) -> LocalizedIdeal:
    result = LocalizedIdeal(context, [1])
    for ideal in ideals:
        result = intersect(result, ideal)
    return result


def quotient(ideal: LocalizedIdeal, f) -> LocalizedIdeal:
    """I : f = {g : g·f ∈ I}."""
    ctx = ideal.context
    principal = LocalizedIdeal(ctx, [f])
    if principal.is_zero:
        return LocalizedIdeal(ctx, [1])
    if principal.is_unit:
        return ideal
    divisor = principal.basis[0]
    meet = intersect(ideal, principal)
    quotients = []
    for g in meet.basis:
        q, r = sympy.div(g, divisor, *ctx.gens, **ctx.options())
        if ctx.normalize(r) != 0:
            raise UsageError(f"Внутренняя ошибка деления при вычислении частного идеалов: {g} / {divisor}")
        quotients.append(q)
    return LocalizedIdeal(ctx, quotients, saturated=True)


def independent_set(ideal: LocalizedIdeal) -> Tuple[int, Tuple[sympy.Symbol, ...]]:
    """
    Максимальное независимое по модулю I множество переменных (по старшим мономам лекс-базиса).
    Размерность единичного идеала равна -1.
    """
    ctx = ideal.context
    if ideal.is_unit:
        return -1, ()
    leading = ideal.leading_variable_monomials()
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in leading]
    n = len(ctx.variables)
    for size in range(n, -1, -1):
        for subset in combinations(range(n), size):
            chosen = frozenset(subset)
            if all(not s <= chosen for s in supports):
                return size, tuple(ctx.variables[i] for i in subset)
    return 0, ()


def dimension(ideal: LocalizedIdeal) -> int:
    return independent_set(ideal)[0]


def standard_monomial_count(ideal: LocalizedIdeal) -> int:
    """dim_K K[X]/I для нульмерного I (число стандартных мономов)."""
    ctx = ideal.context
    if ideal.is_unit:
        return 0
    leading = ideal.leading_variable_monomials()
    n = len(ctx.variables)
    bounds = []
    for i in range(n):
        pure = [m[i] for m in leading if m[i] and all(e == 0 for j, e in enumerate(m) if j != i)]
        if not pure:
            raise UsageError("Идеал не нульмерный: нет чистой степени переменной среди старших мономов")
        bounds.append(min(pure))
    count = 0
    stack = [tuple([0] * n)]
    seen = set(stack)
    while stack:
        monom = stack.pop()
        if any(all(a >= b for a, b in zip(monom, lm)) for lm in leading):
            continue
        count += 1
        for i in range(n):
            nxt = monom[:i] + (monom[i] + 1,) + monom[i + 1:]
            if nxt[i] < bounds[i] and nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return count


def minimal_polynomial(ideal: LocalizedIdeal, form) -> Tuple[sympy.Expr, sympy.Symbol]:
    """
    Минимальный многочлен g(z) элемента form в K[X]/I (I нульмерный), с коэффициентами
    из P[параметры] после сокращения знаменателей.
    """
    ctx = ideal.context
    z = Dummy("z")
    exprs = list(ideal.basis) + [z - ctx.normalize(form)]
    basis = groebner(exprs, *(ctx.variables + (z,) + ctx.parameters), order="lex", **ctx.options())
    variables = set(ctx.variables)
    candidates = [g for g in basis.exprs if g.has(z) and not (g.free_symbols & variables)]
    if not candidates:
        raise InconclusiveError("Не найден минимальный многочлен: идеал не нульмерный")
    best = min(candidates, key=lambda g: (Poly(g, z).degree(), sympy.default_sort_key(g)))
    return best, z


def is_constant(expr) -> bool:
    return not sympy.sympify(expr).free_symbols


def variable_substitution(mapping: Dict[sympy.Symbol, sympy.Expr]):
    return lambda expr: sympy.expand(sympy.sympify(expr).xreplace(mapping))
