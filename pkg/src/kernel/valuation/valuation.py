"""
Градуированные валюации на расщеплённых корпоидах.

Валюация задаётся парой: валюация на F¹ (тривиальная, мономиальная по
параметрам поля функций или p-адическая на Q) и гомоморфизм значений
сечений. Элемент c·t^α имеет значение |c|·Π|t_i|^α_i.

Мономиальная валюация на k(t_1..t_h):
  - вещественный вес (h = 1): |t| = r < 1, |многочлен| = r^(наименьший показатель);
  - лексикографическая: |t_i| = ε_i ∈ Q^h lex, максимум по членам даёт
    лексикографически наименьший вектор показателей.
"""
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import sympy
from sympy import Poly, Symbol

from src.kernel.core.enums import FieldKind, Ordering, ValuationKind
from src.kernel.core.errors import UnsupportedError, UsageError
from src.kernel.corpoid.base_field import BaseField
from src.kernel.corpoid.corpoid import Corpoid, CorpoidElement
from src.kernel.degree.groups import DegreeElement, MultRealGroup
from src.kernel.degree.value_groups import (
    ConvexSubgroup,
    LexValueGroup,
    RealConvexSubgroup,
    RealValueGroup,
    Value,
    coarsen,
    value_compare,
)


class GradedValuation:
    def __init__(
        self,
        corpoid: Corpoid,
        kind: ValuationKind,
        value_group,
        valued_parameters: Sequence[Symbol] = (),
        radius: Optional[DegreeElement] = None,
        prime: Optional[int] = None,
        section_values: Sequence[Value] = (),
    ):
        self.corpoid = corpoid
        self.kind = kind
        self.value_group = value_group
        self.valued_parameters: Tuple[Symbol, ...] = tuple(valued_parameters)
        self.radius = radius
        self.prime = prime
        values = list(section_values) or [value_group.one() for _ in corpoid.section_symbols]
        if len(values) != len(corpoid.section_symbols):
            raise UsageError(f"Ожидалось {len(corpoid.section_symbols)} значений сечений, получено {len(values)}")
        self.section_values: Tuple[Value, ...] = tuple(self._coerce(v) for v in values)

    # ==========================
    # Factory methods
    # ==========================
    @classmethod
    def trivial(cls, corpoid: Corpoid) -> "GradedValuation":
        return cls(corpoid, ValuationKind.TRIVIAL, RealValueGroup(MultRealGroup([])))

    @classmethod
    def tadic(cls, corpoid: Corpoid, parameter: str, radius: Fraction,
              section_values: Sequence[Fraction] = ()) -> "GradedValuation":
        """|t| = radius < 1 на k(t, ...); остальные параметры поля тривиальны."""
        base = corpoid.base
        t = Symbol(parameter)
        if t not in base.parameters:
            raise UsageError(f"Поле {base.name} не содержит параметра {parameter}")
        radius = Fraction(radius)
        if not 0 < radius < 1:
            raise UsageError(f"Значение |{parameter}| = {radius} должно лежать в (0, 1)")
        group = MultRealGroup.ambient_for([radius] + [Fraction(v) for v in section_values])
        values = [group.from_rational(v) for v in section_values]
        return cls(corpoid, ValuationKind.MONOMIAL, RealValueGroup(group), (t,),
                   radius=group.from_rational(radius), section_values=values)

    @classmethod
    def lex(cls, corpoid: Corpoid, height: int) -> "GradedValuation":
        """|t_i| = ε_i на k(t_1..t_h, ...) с группой Q^h lex."""
        base = corpoid.base
        if height < 1 or len(base.parameters) < height:
            raise UsageError(f"Для lex высоты {height} нужно поле функций не менее чем от {height} параметров")
        return cls(corpoid, ValuationKind.MONOMIAL, LexValueGroup(height), base.parameters[:height])

    @classmethod
    def padic(cls, corpoid: Corpoid, p: int) -> "GradedValuation":
        if corpoid.base.kind is not FieldKind.RATIONAL:
            raise UnsupportedError("p-адическая валюация поддерживается только на Q")
        if not sympy.isprime(p):
            raise UsageError(f"padic({p}): {p} не является простым числом")
        group = MultRealGroup.over_primes([p])
        return cls(corpoid, ValuationKind.PADIC, RealValueGroup(group), prime=int(p),
                   radius=group.from_rational(Fraction(1, p)))

    # ------------------------
    # Структура
    # ------------------------
    def _coerce(self, value: Value) -> Value:
        if isinstance(self.value_group, RealValueGroup):
            return self.value_group.group.coerce(value)
        return value

    @property
    def is_lex(self) -> bool:
        return isinstance(self.value_group, LexValueGroup)

    @property
    def height(self) -> int:
        if self.kind is ValuationKind.TRIVIAL:
            return 0
        return self.value_group.height

    def one(self) -> Value:
        return self.value_group.one()

    def uniformizer_values(self) -> List[Value]:
        """Значения образующих максимального идеала: |t_i| или |p|."""
        if self.is_lex:
            return [self.value_group.uniformizer(i) for i in range(self.value_group.height)]
        if self.radius is not None:
            return [self.radius]
        return []

    # ------------------------
    # Значения на F¹
    # ------------------------
    def _leading(self, expr) -> Tuple[Tuple[int, ...], sympy.Expr]:
        """Наименьший (лексикографически) вектор показателей валюируемых параметров и его коэффициент."""
        expr = sympy.expand(expr)
        poly = Poly(expr, *self.valued_parameters, domain="EX")
        terms = poly.terms()
        monom = min(m for m, _ in terms)
        coeff = sum(c for m, c in terms if m == monom)
        return tuple(monom), sympy.sympify(coeff)

    def _monomial_value(self, exponents: Sequence[int]) -> Value:
        if self.is_lex:
            return self.value_group.value(exponents)
        return self.radius ** exponents[0]

    def field_value(self, c) -> Optional[Value]:
        """|c| для c ∈ F¹; None: значение нуля."""
        base = self.corpoid.base
        c = base.normalize(c)
        if c == 0:
            return None
        if self.kind is ValuationKind.TRIVIAL:
            return self.one()
        if self.kind is ValuationKind.PADIC:
            r = sympy.Rational(c)
            v = sympy.multiplicity(self.prime, r.p) - sympy.multiplicity(self.prime, r.q)
            return self.radius ** v
        num, den = sympy.fraction(sympy.together(c))
        top, _ = self._leading(num)
        bottom, _ = self._leading(den)
        return self._monomial_value([a - b for a, b in zip(top, bottom)])

    def evaluate(self, x: CorpoidElement) -> Optional[Value]:
        if x.corpoid != self.corpoid:
            raise UsageError(f"Элемент {x} не лежит в области определения валюации")
        value = self.field_value(x.coefficient)
        if value is None:
            return None
        for v, e in zip(self.section_values, x.exponents):
            if e:
                value = value * v ** e
        return value

    # ------------------------
    # Поле вычетов
    # ------------------------
    def residue_field(self) -> BaseField:
        base = self.corpoid.base
        if self.kind is ValuationKind.TRIVIAL:
            return base
        if self.kind is ValuationKind.PADIC:
            return BaseField.prime(self.prime)
        prime_field = BaseField.rational() if base.characteristic == 0 else BaseField.prime(base.characteristic)
        rest = [str(s) for s in base.parameters if s not in set(self.valued_parameters)]
        return BaseField.function_field(prime_field, rest) if rest else prime_field

    def field_residue(self, c) -> sympy.Expr:
        """Вычет единицы c / π^v в k̃ (для c ≠ 0)."""
        base = self.corpoid.base
        c = base.normalize(c)
        if c == 0:
            raise UsageError("Вычет нуля не определён")
        if self.kind is ValuationKind.TRIVIAL:
            return c
        residue = self.residue_field()
        if self.kind is ValuationKind.PADIC:
            r = sympy.Rational(c)
            v = sympy.multiplicity(self.prime, r.p) - sympy.multiplicity(self.prime, r.q)
            unit = r / sympy.Integer(self.prime) ** v
            return residue.normalize(unit)
        num, den = sympy.fraction(sympy.together(c))
        _, top = self._leading(num)
        _, bottom = self._leading(den)
        return residue.normalize(top / bottom)

    # ------------------------
    # Огрубление
    # ------------------------
    def convex_subgroup(self, start: Optional[int] = None, whole: Optional[bool] = None):
        if self.is_lex:
            return self.value_group.convex_subgroup(self.value_group.height if start is None else start)
        return RealConvexSubgroup(self.value_group, bool(whole))

    def __repr__(self):
        if self.kind is ValuationKind.TRIVIAL:
            return f"trivial({self.corpoid.base.name})"
        if self.kind is ValuationKind.PADIC:
            return f"padic({self.prime})"
        if self.is_lex:
            return f"lex({self.corpoid.base.name}, {self.value_group.height})"
        return f"tadic({self.corpoid.base.name}, |{self.valued_parameters[0]}| = {self.radius})"


class CoarsenedValuation:
    """Валюация, огрублённая по выпуклой подгруппе H: x ↦ образ |x| в Γ/H."""

    def __init__(self, valuation: GradedValuation, subgroup):
        if isinstance(subgroup, ConvexSubgroup) and subgroup.group != valuation.value_group:
            raise UsageError(f"Подгруппа {subgroup} не лежит в группе значений {valuation.value_group}")
        if isinstance(subgroup, RealConvexSubgroup) and valuation.is_lex:
            raise UsageError("Вещественная выпуклая подгруппа для лексикографической валюации")
        self.valuation = valuation
        self.subgroup = subgroup
        self.corpoid = valuation.corpoid

    @property
    def height(self) -> int:
        if isinstance(self.subgroup, ConvexSubgroup):
            return self.subgroup.start
        return 0 if self.subgroup.whole else self.valuation.height

    @property
    def residue_height(self) -> int:
        """Высота индуцированной валюации на поле вычетов огрублённой валюации."""
        return self.valuation.height - self.height

    def field_value(self, c) -> Optional[Value]:
        return coarsen(self.valuation.field_value(c), self.subgroup)

    def evaluate(self, x: CorpoidElement) -> Optional[Value]:
        return coarsen(self.valuation.evaluate(x), self.subgroup)

    def one(self) -> Value:
        return coarsen(self.valuation.one(), self.subgroup)

    def __repr__(self):
        return f"{self.valuation} / {self.subgroup}"


def compose(valuation: GradedValuation, subgroup) -> CoarsenedValuation:
    """Огрубление v по выпуклой подгруппе H; v уточняет результат."""
    return CoarsenedValuation(valuation, subgroup)


def value_le_one(valuation, value: Optional[Value]) -> bool:
    return value_compare(value, valuation.one()) is not Ordering.GREATER


def value_lt_one(valuation, value: Optional[Value]) -> bool:
    return value_compare(value, valuation.one()) is Ordering.LESS


class ValuationAnnuloid:
    """F° = {|x| ≤ 1}, F°° = {|x| < 1}."""

    def __init__(self, valuation):
        self.valuation = valuation

    def contains(self, x: CorpoidElement) -> bool:
        return value_le_one(self.valuation, self.valuation.evaluate(x))

    def is_maximal_ideal_member(self, x: CorpoidElement) -> bool:
        return value_lt_one(self.valuation, self.valuation.evaluate(x))

    def is_unit(self, x: CorpoidElement) -> bool:
        value = self.valuation.evaluate(x)
        return value is not None and value_compare(value, self.valuation.one()) is Ordering.EQUAL


def evaluate(valuation, x) -> Optional[Value]:
    return valuation.evaluate(x)
