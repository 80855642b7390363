"""
Формальная модель представления над F_q((t)): уничтожение t-кручения.

Наивная модель X = F_p[t][T]/(a_1..a_m) может иметь t-кручение; его идеал —
(a) : t^∞ по модулю (a). Образующие насыщения вне (a): убийцы кручения
b_1..b_ℓ; модель F_p[t][T]/(a, b) плоская и после обращения t задаёт то же B.
"""
from dataclasses import dataclass, field
from typing import List, Optional

import sympy
from sympy import Poly
from sympy.polys.polyerrors import PolynomialError

from src.kernel.algebra import primes as prime_tools
from src.kernel.algebra.context import AlgebraContext, LocalizedIdeal, saturate
from src.kernel.core.enums import FieldKind, ValuedFieldKind
from src.kernel.core.errors import UnsupportedError
from src.kernel.core.settings import KernelSettings, resolve
from src.kernel.corpoid.base_field import BaseField
from src.kernel.corpoid.corpoid import Corpoid
from src.kernel.tate.presentation import TatePresentation
from src.kernel.valuation.flatness import IntegralModel, is_flat_module
from src.kernel.valuation.valuation import GradedValuation

# Логирование
# ====================================================
from src.utils.logger.logger import get_logger
logger = get_logger(__name__)


@dataclass
class FormalModel:
    naive: IntegralModel
    model: IntegralModel
    killers: List[sympy.Expr] = field(default_factory=list)
    flat: bool = False
    generic_equal: bool = False
    special_fiber_ok: bool = False

    @property
    def verified(self) -> bool:
        return self.flat and self.generic_equal and self.special_fiber_ok

    def describe(self) -> str:
        killers = ", ".join(str(b) for b in self.killers) or "нет"
        return f"{self.model}; убийцы кручения: {killers}"


def _polynomial_relators(presentation: TatePresentation, t: sympy.Symbol) -> List[sympy.Expr]:
    exprs = []
    for a in presentation.relators:
        if not a.exact:
            raise UnsupportedError(f"Соотношение {a} задано с точностью ε: нужна точная полиномиальная модель")
        expr = a.to_expr()
        try:
            Poly(expr, *(presentation.ring.symbols + (t,)))
        except PolynomialError:
            raise UnsupportedError(f"Коэффициенты {a} не являются многочленами от {t}")
        exprs.append(expr)
    return exprs


def _special_residues(exprs: List[sympy.Expr], variables, t: sympy.Symbol) -> List[sympy.Expr]:
    """a_i / t^(v_i) mod t: вычеты степени один соотношений."""
    residues = []
    for expr in exprs:
        order = min(m[-1] for m in Poly(expr, *(tuple(variables) + (t,))).monoms())
        residues.append(sympy.expand(sympy.cancel(expr / t ** order)).subs(t, 0))
    return residues


def build_formal_model(presentation: TatePresentation, settings: Optional[KernelSettings] = None) -> FormalModel:
    settings = resolve(settings)
    k = presentation.ring.field
    if k.kind is not ValuedFieldKind.LAURENT:
        raise UnsupportedError(f"Формальная модель строится над F_p((t)), получено {k.name}")
    if k.residue.kind is not FieldKind.PRIME:
        raise UnsupportedError(f"Модель над F_p[t] требует простого поля вычетов, получено {k.residue.name}")
    if not all(r.is_one() for r in presentation.ring.radii):
        raise UnsupportedError("Формальная модель строится только для r = 1")

    t = k.t
    exprs = _polynomial_relators(presentation, t)
    function_field = BaseField.function_field(k.residue, [str(t)])
    valuation = GradedValuation.tadic(Corpoid.trivial(function_field), str(t), k.t_norm)
    variables = [str(s) for s in presentation.ring.symbols]
    naive = IntegralModel(valuation, variables, exprs)

    ideal = naive.total_ideal()
    saturated = saturate(ideal, t)
    killers = [b for b in saturated.basis if not ideal.contains(b)]
    model = IntegralModel(valuation, variables, list(exprs) + killers)
    result = FormalModel(naive, model, killers)
    logger.info(f"📊 {presentation.name}: убийц кручения {len(killers)}")

    result.flat = is_flat_module(model)
    ctx = naive.total_context()
    generic = ctx.localize([t])
    result.generic_equal = LocalizedIdeal(generic, exprs).equals(LocalizedIdeal(generic, list(exprs) + killers))

    symbols = presentation.ring.symbols
    special = LocalizedIdeal(AlgebraContext(k.characteristic, symbols), _special_residues(exprs, symbols, t))
    root = prime_tools.radical(special, settings)
    result.special_fiber_ok = all(root.contains(sympy.expand(b).subs(t, 0)) for b in killers)

    icon = "✅" if result.verified else "❌"
    logger.info(f"{icon} Формальная модель {presentation.name}: {result.describe()}")
    return result
