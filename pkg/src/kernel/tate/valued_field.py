"""
Полные нормированные поля коэффициентов алгебр Тейта.

Каждое поле несёт объемлющую группу значений (над простыми: всегда 2,
простые из Γ и из |π|) и подгруппу Γ. Нулевая норма представлена None.
Остаточный корпоид k̃ = split(k̃¹, τ:|π|) (без сечений для тривиальной нормы).
"""
import random
from abc import ABC, abstractmethod
from fractions import Fraction
from typing import Iterable, Optional

import sympy

from src.kernel.core.enums import ValuedFieldKind
from src.kernel.core.errors import PrecisionError, UsageError
from src.kernel.corpoid.base_field import BaseField
from src.kernel.corpoid.corpoid import Corpoid, CorpoidElement
from src.kernel.degree.groups import DegreeElement, MultRealGroup, Subgroup


def ambient_group(primes: Iterable[int], gamma: Iterable[Fraction] = ()) -> MultRealGroup:
    primes = set(int(p) for p in primes) | {2}
    for g in gamma:
        primes.update(int(p) for p in sympy.primefactors(Fraction(g).numerator))
        primes.update(int(p) for p in sympy.primefactors(Fraction(g).denominator))
    return MultRealGroup.over_primes(primes)


class ValuedBaseField(ABC):
    kind: ValuedFieldKind
    exact: bool = True

    def __init__(self, name: str, residue: BaseField, group: MultRealGroup, gamma: Iterable[Fraction] = ()):
        self.name = name
        self.residue = residue
        self.group = group
        self.gamma = Subgroup(group, [group.from_rational(Fraction(g)) for g in gamma])

    @property
    def characteristic(self) -> int:
        return self.residue.characteristic if self.kind is not ValuedFieldKind.PADIC else 0

    @property
    def symbols(self):
        return self.residue.symbols

    # ------------------------
    # Арифметика
    # ------------------------
    @abstractmethod
    def from_expr(self, expr):
        """Элемент поля по выражению (рациональное число, элемент k̃, ряд от t)."""

    @abstractmethod
    def to_expr(self, c) -> sympy.Expr:
        pass

    @abstractmethod
    def add(self, a, b):
        pass

    @abstractmethod
    def mul(self, a, b):
        pass

    @abstractmethod
    def neg(self, a):
        pass

    @abstractmethod
    def inverse(self, a):
        pass

    @abstractmethod
    def is_zero(self, a) -> bool:
        pass

    def zero(self):
        return self.from_expr(0)

    def one(self):
        return self.from_expr(1)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inverse(b))

    def equal(self, a, b) -> bool:
        return self.is_zero(self.sub(a, b))

    # ------------------------
    # Норма и вычеты
    # ------------------------
    @abstractmethod
    def norm(self, c) -> Optional[DegreeElement]:
        pass

    @abstractmethod
    def unit_residue(self, c) -> sympy.Expr:
        """Вычет c / π^v(c) в k̃¹."""

    @abstractmethod
    def lift(self, residue) -> object:
        """Представитель элемента k̃¹ нормы 1 (или 0)."""

    def uniformizer(self) -> Optional[sympy.Expr]:
        """Выражение π с |π| = uniformizer_norm()."""
        return None

    def uniformizer_norm(self) -> Optional[DegreeElement]:
        return None

    def value_group_generators(self):
        value = self.uniformizer_norm()
        return [] if value is None else [value]

    def residue_corpoid(self, group: MultRealGroup) -> Corpoid:
        value = self.uniformizer_norm()
        sections = [] if value is None else [("τ", group.coerce(value))]
        return Corpoid(self.residue, group, sections)

    def residue_coefficient(self, c, corpoid: Corpoid) -> CorpoidElement:
        value = self.norm(c)
        if value is None:
            raise UsageError("Вычет нуля не определён")
        return corpoid.element(self.unit_residue(c), corpoid.group.coerce(value))

    @abstractmethod
    def random_element(self, rng: random.Random):
        """Случайный элемент нормы ≤ 1."""

    def __repr__(self):
        return self.name


class TriviallyValuedField(ValuedBaseField):
    """Q или F_q с |c| = 1 для c ≠ 0 (режим |k^×| = 1, Γ ≠ 1)."""
    kind = ValuedFieldKind.TRIVIAL

    def __init__(self, field: BaseField, gamma: Iterable[Fraction] = ()):
        gamma = list(gamma)
        super().__init__(f"{field.name}", field, ambient_group([], gamma), gamma)
        self.field = field

    def from_expr(self, expr):
        return self.field.normalize(self.field.check_symbols(expr))

    def to_expr(self, c) -> sympy.Expr:
        return c

    def add(self, a, b):
        return self.field.add(a, b)

    def mul(self, a, b):
        return self.field.mul(a, b)

    def neg(self, a):
        return self.field.neg(a)

    def inverse(self, a):
        return self.field.inverse(a)

    def is_zero(self, a) -> bool:
        return self.field.is_zero(a)

    def norm(self, c) -> Optional[DegreeElement]:
        return None if self.is_zero(c) else self.group.one()

    def unit_residue(self, c) -> sympy.Expr:
        return self.field.normalize(c)

    def lift(self, residue):
        return self.field.normalize(residue)

    def random_element(self, rng: random.Random):
        return self.field.random_element(rng)


class PadicField(ValuedBaseField):
    """Q с p-адической нормой |p| = 1/p; коэффициенты: точные рациональные числа."""
    kind = ValuedFieldKind.PADIC

    def __init__(self, p: int, gamma: Iterable[Fraction] = ()):
        if not sympy.isprime(p):
            raise UsageError(f"Q_{p}: {p} не является простым числом")
        gamma = list(gamma)
        super().__init__(f"Q{p}", BaseField.prime(p), ambient_group([p], gamma), gamma)
        self.p = int(p)

    def from_expr(self, expr):
        value = sympy.sympify(expr)
        if not value.is_Rational:
            raise UsageError(f"Коэффициент {expr} над Q_{self.p} должен быть рациональным")
        return value

    def to_expr(self, c) -> sympy.Expr:
        return c

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inverse(self, a):
        if a == 0:
            raise UsageError("Обращение нуля в Q_p")
        return 1 / a

    def is_zero(self, a) -> bool:
        return a == 0

    def valuation(self, c) -> int:
        r = sympy.Rational(c)
        return sympy.multiplicity(self.p, r.p) - sympy.multiplicity(self.p, r.q)

    def norm(self, c) -> Optional[DegreeElement]:
        if c == 0:
            return None
        return self.group.from_rational(Fraction(1, self.p)) ** self.valuation(c)

    def uniformizer(self) -> sympy.Expr:
        return sympy.Integer(self.p)

    def uniformizer_norm(self) -> Optional[DegreeElement]:
        return self.group.from_rational(Fraction(1, self.p))

    def unit_residue(self, c) -> sympy.Expr:
        unit = sympy.Rational(c) / sympy.Integer(self.p) ** self.valuation(c)
        return self.residue.normalize(unit)

    def lift(self, residue):
        return sympy.Integer(int(residue) % self.p)

    def random_element(self, rng: random.Random):
        denominators = [d for d in (1, 2, 3, 5, 7) if d % self.p]
        return sympy.Rational(rng.randint(-20, 20), rng.choice(denominators))


def parse_eps(field: ValuedBaseField, text: Optional[str]) -> Optional[DegreeElement]:
    """Порог точности ε в группе значений поля (None: точные вычисления)."""
    if text is None or text == "exact":
        return None
    value = field.group.parse(text)
    if value.is_one() or value > field.group.one():
        raise PrecisionError(f"Порог точности {text} должен быть меньше 1")
    return value
