from typing import Optional, Sequence

import sympy

from src.kernel.core.errors import UsageError
from src.kernel.ideal.graded_ideal import GradedIdeal
from src.kernel.valuation.gauss import GaussValuation
from src.kernel.valuation.valuation import value_le_one


def _reduce(ideal: Optional[GradedIdeal], expr) -> sympy.Expr:
    if ideal is None:
        return sympy.expand(expr)
    arith = ideal.arithmetic
    if arith.is_zero:
        return sympy.expand(expr)
    ctx = arith.context
    _, remainder = sympy.reduced(ctx.normalize(expr), list(arith.basis), *ctx.gens, order="lex", **ctx.options())
    return ctx.normalize(remainder)


def spv_membership(valuation: GaussValuation, elements: Sequence, point: Optional[GradedIdeal] = None) -> bool:
    """
    (ξ, |·|) ∈ Spv(A, E): |a(ξ)| ≤ 1 для всех a ∈ E.
    a(ξ): нормальная форма a по модулю ξ, оценённая валюацией на κ(ξ).
    """
    for a in elements:
        image = _reduce(point, a)
        if image == 0:
            continue
        if not value_le_one(valuation, valuation.evaluate_expr(image)):
            return False
    return True


def integrality_witness_check(a, monic, variable, ideal: Optional[GradedIdeal] = None) -> bool:
    """Сертификат целости: monic(a) = 0 в A (A = кольцо идеала или кольцо многочленов)."""
    variable = sympy.Symbol(str(variable))
    poly = sympy.Poly(sympy.sympify(monic), variable)
    if poly.degree() < 1 or sympy.simplify(poly.LC() - 1) != 0:
        raise UsageError(f"Многочлен {monic} не унитарен по {variable}")
    value = sympy.expand(poly.as_expr().subs(variable, sympy.sympify(a)))
    if ideal is None:
        return value == 0
    return _reduce(ideal, value) == 0
