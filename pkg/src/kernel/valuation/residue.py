"""
Остаточные корпоиды F̃ = ⊕ F^{≤(d,γ)} / F^{<(d,γ)}, градуированные по D × |F^×|.

Для расщеплённого корпоида с мономиальной или p-адической валюацией F̃
снова расщеплён: k̃ с сечениями значений униформизант (τ) и образами
сечений корпоида (t̃ бистепени (g, |t_g|)). Вычет x̃ ненулевого x = c·t^α —
тройка (вычет единицы c/π^v, 𝔡(x), |x|).
"""
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import sympy

from src.kernel.core.enums import Ordering
from src.kernel.core.errors import UsageError
from src.kernel.corpoid.base_field import BaseField
from src.kernel.corpoid.corpoid import CorpoidElement
from src.kernel.degree.groups import DegreeElement
from src.kernel.degree.value_groups import Value, value_compare
from src.kernel.valuation.valuation import GradedValuation


@dataclass(frozen=True)
class ResidueElement:
    base: BaseField
    coefficient: sympy.Expr
    degree: DegreeElement
    value: Value

    def __mul__(self, other: "ResidueElement") -> "ResidueElement":
        if other.base != self.base:
            raise UsageError("Вычеты в разных остаточных корпоидах")
        return ResidueElement(
            self.base, self.base.mul(self.coefficient, other.coefficient),
            self.degree * other.degree, self.value * other.value,
        )

    def __eq__(self, other):
        return (
            isinstance(other, ResidueElement)
            and self.degree == other.degree
            and value_compare(self.value, other.value) is Ordering.EQUAL
            and self.base.equal(self.coefficient, other.coefficient)
        )

    def __hash__(self):
        return hash((self.degree, str(self.coefficient)))

    def __repr__(self):
        return f"({self.coefficient}; {self.degree}, {self.value})"


@dataclass
class ResidueCorpoid:
    base: BaseField
    sections: List[Tuple[str, DegreeElement, Value]] = field(default_factory=list)
    variables: List[Tuple[str, DegreeElement, Value]] = field(default_factory=list)

    def bidegrees(self) -> List[Tuple[DegreeElement, Value]]:
        return [(d, v) for _, d, v in self.sections]

    def describe(self) -> str:
        parts = [f"{name}:({d}, {v})" for name, d, v in self.sections + self.variables]
        if not parts:
            return f"split({self.base.name})"
        return f"split({self.base.name}, {', '.join(parts)})"

    def __repr__(self):
        return self.describe()


def residue_corpoid(valuation: GradedValuation) -> ResidueCorpoid:
    corpoid = valuation.corpoid
    one = corpoid.group.one()
    sections = []
    values = valuation.uniformizer_values()
    names = ["τ"] if len(values) == 1 else [f"τ{i + 1}" for i in range(len(values))]
    for name, value in zip(names, values):
        sections.append((name, one, value))
    for t, d, v in zip(corpoid.section_symbols, corpoid.section_degrees, valuation.section_values):
        sections.append((f"{t}~", d, v))
    return ResidueCorpoid(valuation.residue_field(), sections)


def tilde(valuation: GradedValuation, x: CorpoidElement) -> ResidueElement:
    if x.is_zero:
        raise UsageError("Вычет x̃ определён только для ненулевых элементов")
    value: Optional[Value] = valuation.evaluate(x)
    return ResidueElement(valuation.residue_field(), valuation.field_residue(x.coefficient), x.degree, value)
