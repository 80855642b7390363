"""
Конечно представленные алгебры X = F°[x]/(f_1..f_m) над кольцом валюации.

Соотношения задаются многочленами от x с коэффициентами из k[t_1..t_h]
(t_i: валюируемые параметры поля), поэтому лежат в F°. Слой над τ_i:
t_1..t_i обнуляются, остальные параметры обращаются (κ(τ_i) = k(t_{i+1..h})).

Над кольцом валюации плоскость равна отсутствию кручения, а любой
ненулевой скаляр F° есть моном от t, умноженный на единицу, поэтому
кручение проверяется насыщением по произведению t_1⋯t_h.
"""
from typing import List, Optional, Sequence, Tuple

import sympy
from sympy import Symbol

from src.kernel.algebra.context import AlgebraContext, LocalizedIdeal, saturate
from src.kernel.core.enums import ValuationKind
from src.kernel.core.errors import UnsupportedError, UsageError
from src.kernel.valuation.chain import ChainPoint, HeightChain
from src.kernel.valuation.valuation import GradedValuation

# Логирование
# ====================================================
from src.utils.logger.logger import get_logger
logger = get_logger(__name__)


class IntegralModel:
    def __init__(self, valuation: GradedValuation, variables: Sequence[str], relators: Sequence):
        if valuation.corpoid.section_symbols:
            raise UnsupportedError("Целые модели строятся над корпоидом без сечений")
        self.valuation = valuation
        self.variables: Tuple[Symbol, ...] = tuple(Symbol(v) for v in variables)
        base = valuation.corpoid.base
        clash = set(self.variables) & set(base.symbols)
        if clash:
            raise UsageError(f"Переменные модели совпадают с параметрами поля: {sorted(map(str, clash))}")
        self.relators: Tuple[sympy.Expr, ...] = tuple(sympy.expand(sympy.sympify(r)) for r in relators)
        for r in self.relators:
            self._check_integral(r)
        self.chain = HeightChain(valuation)

    def _check_integral(self, r):
        allowed = set(self.variables) | set(self.valuation.corpoid.base.symbols)
        extra = r.free_symbols - allowed
        if extra:
            raise UsageError(f"Соотношение {r} содержит неизвестные символы {sorted(map(str, extra))}")
        num, den = sympy.fraction(sympy.together(r))
        if den.free_symbols & set(self.valuation.valued_parameters):
            raise UsageError(f"Коэффициенты {r} должны быть многочленами от {list(map(str, self.valuation.valued_parameters))}")
        if self.valuation.kind is ValuationKind.PADIC:
            for c in sympy.Poly(r, *self.variables).coeffs():
                if sympy.Rational(c).q % self.valuation.prime == 0:
                    raise UsageError(f"Коэффициент {c} соотношения {r} не лежит в Z_({self.valuation.prime})")

    @property
    def characteristic(self) -> int:
        return self.valuation.corpoid.base.characteristic

    # ------------------------
    # Контексты
    # ------------------------
    def total_context(self) -> AlgebraContext:
        v = self.valuation
        others = tuple(s for s in v.corpoid.base.parameters if s not in set(v.valued_parameters))
        return AlgebraContext(self.characteristic, self.variables + v.valued_parameters, others)

    def total_ideal(self) -> LocalizedIdeal:
        return LocalizedIdeal(self.total_context(), self.relators)

    def fiber(self, point: ChainPoint) -> LocalizedIdeal:
        v = self.valuation
        if v.kind is ValuationKind.PADIC and point.index == 1:
            ctx = AlgebraContext(v.prime, self.variables, point.residue_parameters)
            return LocalizedIdeal(ctx, [_reduce_mod_p(r, v.prime) for r in self.relators])
        ctx = AlgebraContext(self.characteristic, self.variables, point.residue_parameters)
        substitution = {t: 0 for t in point.killed}
        return LocalizedIdeal(ctx, [r.xreplace(substitution) for r in self.relators])

    def fibers(self) -> List[Tuple[ChainPoint, LocalizedIdeal]]:
        return [(point, self.fiber(point)) for point in self.chain]

    def reduce_to(self, point: ChainPoint, expr) -> sympy.Expr:
        """Образ элемента F°[x] в слое над point."""
        v = self.valuation
        if v.kind is ValuationKind.PADIC and point.index == 1:
            return _reduce_mod_p(expr, v.prime)
        return sympy.expand(sympy.sympify(expr).xreplace({t: 0 for t in point.killed}))

    def __repr__(self):
        return f"{self.valuation}[{', '.join(map(str, self.variables))}] / ({', '.join(map(str, self.relators))})"


def _reduce_mod_p(expr, p: int) -> sympy.Expr:
    num, den = sympy.fraction(sympy.together(expr))
    ctx = AlgebraContext(p, ())
    den = ctx.normalize(den)
    if den == 0:
        raise UsageError(f"Знаменатель {expr} делится на {p}")
    return ctx.normalize(num * pow(int(den), -1, p))


def is_flat_module(model: IntegralModel) -> bool:
    """X плоско над F° ⟺ I : (t_1⋯t_h)^∞ ⊆ I в k[t][x]."""
    v = model.valuation
    if v.kind is ValuationKind.PADIC:
        raise UnsupportedError("Плоскость над Z_(p) требует базисов над кольцом целых и не поддерживается")
    ideal = model.total_ideal()
    if v.kind is ValuationKind.TRIVIAL or not v.valued_parameters:
        return True
    product = sympy.Mul(*v.valued_parameters)
    saturated = saturate(ideal, product)
    flat = ideal.contains_ideal(saturated)
    logger.debug(f"🔍 Плоскость {model}: {flat}")
    return flat


def torsion_witness(model: IntegralModel) -> Optional[sympy.Expr]:
    """Элемент I : t^∞ вне I (свидетель кручения) или None."""
    v = model.valuation
    if v.kind is not ValuationKind.MONOMIAL:
        return None
    ideal = model.total_ideal()
    saturated = saturate(ideal, sympy.Mul(*v.valued_parameters))
    for g in saturated.basis:
        if not ideal.contains(g):
            return g
    return None
