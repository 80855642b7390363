"""
Валюация Гаусса F(r\\T/γ): |Σ a_I T^I| = max |a_I|·γ^I.

Поддерживаются только вещественные группы значений: γ и значения базы
переводятся в общую объемлющую группу над всеми участвующими простыми.
"""
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import sympy

from src.kernel.core.enums import Ordering
from src.kernel.core.errors import UnsupportedError, UsageError
from src.kernel.corpoid.polynomial import GradedPolynomial, GradedPolynomialRing
from src.kernel.degree.groups import DegreeElement, MultRealGroup
from src.kernel.degree.value_groups import RealValueGroup, Value, value_compare, value_max
from src.kernel.valuation.residue import ResidueCorpoid, residue_corpoid
from src.kernel.valuation.valuation import GradedValuation


class GaussValuation:
    def __init__(self, base: GradedValuation, ring: GradedPolynomialRing, radii: Dict[str, Fraction]):
        if base.is_lex:
            raise UnsupportedError("Валюация Гаусса над лексикографической группой значений не поддерживается")
        if ring.corpoid != base.corpoid:
            raise UsageError(f"Кольцо {ring} построено не над корпоидом валюации {base}")
        missing = [str(s) for s in ring.symbols if str(s) not in radii]
        if missing:
            raise UsageError(f"Не заданы значения γ для переменных {missing}")
        self.base = base
        self.ring = ring
        radii = {name: Fraction(value) for name, value in radii.items()}
        primes = set(base.value_group.group.primes)
        group = MultRealGroup.ambient_for(list(radii.values()) + [Fraction(p) for p in primes])
        self.group = group
        self.value_group = RealValueGroup(group)
        self.radii: Tuple[DegreeElement, ...] = tuple(group.from_rational(radii[str(s)]) for s in ring.symbols)

    @property
    def height(self) -> int:
        return self.base.height

    def one(self) -> DegreeElement:
        return self.group.one()

    def _lift(self, value: Optional[Value]) -> Optional[DegreeElement]:
        return None if value is None else self.group.coerce(value)

    def monomial_value(self, exponents: Sequence[int]) -> DegreeElement:
        result = self.group.one()
        for gamma, e in zip(self.radii, exponents):
            if e:
                result = result * gamma ** e
        return result

    def term_values(self, f: GradedPolynomial) -> List[Tuple[Tuple[int, ...], DegreeElement]]:
        return [
            (exps, self._lift(self.base.evaluate(c)) * self.monomial_value(exps))
            for exps, c in f.terms.items()
        ]

    def evaluate(self, f: GradedPolynomial) -> Optional[DegreeElement]:
        if f.ring != self.ring:
            raise UsageError(f"Многочлен {f} не лежит в кольце {self.ring}")
        best: Optional[DegreeElement] = None
        for _, value in self.term_values(f):
            best = value_max(best, value)
        return best

    def evaluate_expr(self, expr) -> Optional[DegreeElement]:
        return self.evaluate(self.ring.from_expr(expr))

    # ------------------------
    # Вычеты
    # ------------------------
    def residue_corpoid(self) -> ResidueCorpoid:
        inner = residue_corpoid(self.base)
        variables = [(f"{s}~", d, gamma) for s, d, gamma in zip(self.ring.symbols, self.ring.degrees, self.radii)]
        return ResidueCorpoid(inner.base, inner.sections, variables)

    def reduction(self, f: GradedPolynomial) -> Tuple[sympy.Expr, Optional[DegreeElement]]:
        """f̃: сумма вычетов членов максимального значения как многочлен от T̃."""
        top = self.evaluate(f)
        if top is None:
            return sympy.Integer(0), None
        residue = self.base.residue_field()
        symbols = [sympy.Symbol(f"{s}~") for s in self.ring.symbols]
        total = sympy.Integer(0)
        for exps, value in self.term_values(f):
            if value_compare(value, top) is Ordering.EQUAL:
                c = self.base.field_residue(f.terms[exps].coefficient)
                total += c * sympy.Mul(*[s ** e for s, e in zip(symbols, exps)])
        return residue.context(symbols).normalize(total), top

    def __repr__(self):
        radii = ", ".join(f"{s}:{d} -> {g}" for s, d, g in zip(self.ring.symbols, self.ring.degrees, self.radii))
        return f"gauss(base={self.base}, {radii})"


def gauss_extend(base: GradedValuation, ring: GradedPolynomialRing, radii: Dict[str, Fraction]) -> GaussValuation:
    return GaussValuation(base, ring, radii)
