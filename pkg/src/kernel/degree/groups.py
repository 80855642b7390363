"""
Мультипликативные группы положительных вещественных чисел с рациональными образующими.

Группа задаётся списком положительных рациональных образующих; элемент: вектор
рациональных показателей. Точные сравнения и равенства сводятся к разложению
на простые множители и целочисленному перекрёстному возведению в степень.
"""
import re
from fractions import Fraction
from math import lcm
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import sympy

from src.kernel.core.enums import Ordering
from src.kernel.core.errors import UsageError
from src.kernel.degree.lattice import integer_row_basis, rational_rank, scale_to_integers, solve_in_basis

Exponent = Union[int, Fraction]


def _prime_vector(q: Fraction) -> Dict[int, int]:
    vector: Dict[int, int] = {}
    for p, e in sympy.factorint(q.numerator).items():
        vector[int(p)] = vector.get(int(p), 0) + int(e)
    for p, e in sympy.factorint(q.denominator).items():
        vector[int(p)] = vector.get(int(p), 0) - int(e)
    return {p: e for p, e in vector.items() if e}


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, sympy.Rational):
        return Fraction(int(value.p), int(value.q))
    return Fraction(value)


class MultRealGroup:
    """Подгруппа R_{>0}^× с фиксированным списком рациональных образующих."""

    def __init__(self, generators: Iterable):
        gens = tuple(_as_fraction(g) for g in generators)
        for g in gens:
            if g <= 0:
                raise UsageError(f"Образующая группы должна быть положительной: {g}")
        self.generators: Tuple[Fraction, ...] = gens
        self._vectors = [_prime_vector(g) for g in gens]
        self.primes: Tuple[int, ...] = tuple(sorted({p for v in self._vectors for p in v}))
        self._rows = None

    # ==========================
    # Factory methods
    # ==========================
    @classmethod
    def over_primes(cls, primes: Iterable[int]) -> "MultRealGroup":
        """Объемлющая группа, порождённая простыми числами (содержит Q-оболочки всех их произведений)."""
        return cls(sorted(set(int(p) for p in primes)))

    @classmethod
    def ambient_for(cls, values: Iterable[Fraction]) -> "MultRealGroup":
        primes = set()
        for v in values:
            primes.update(_prime_vector(_as_fraction(v)))
        return cls.over_primes(primes)

    # ------------------------
    # Элементы
    # ------------------------
    def element(self, exponents: Sequence[Exponent]) -> "DegreeElement":
        return DegreeElement(self, exponents)

    def one(self) -> "DegreeElement":
        return DegreeElement(self, [0] * len(self.generators))

    def generator(self, index: int) -> "DegreeElement":
        exps = [0] * len(self.generators)
        exps[index] = 1
        return DegreeElement(self, exps)

    def prime_vector(self, exponents: Sequence[Fraction]) -> Tuple[Tuple[int, Fraction], ...]:
        total: Dict[int, Fraction] = {}
        for e, vec in zip(exponents, self._vectors):
            if not e:
                continue
            for p, k in vec.items():
                total[p] = total.get(p, Fraction(0)) + e * k
        return tuple(sorted((p, e) for p, e in total.items() if e))

    def _generator_rows(self):
        if self._rows is None:
            rows = [[Fraction(vec.get(p, 0)) for p in self.primes] for vec in self._vectors]
            self._rows = rows
        return self._rows

    def from_prime_vector(self, vector: Dict[int, Fraction]) -> Optional["DegreeElement"]:
        """Выражает элемент с данным простым вектором через образующие (None, если вне Q-оболочки)."""
        if any(p not in self.primes for p, e in vector.items() if e):
            return None
        if not self.generators or not self.primes:
            return self.one() if not any(vector.values()) else None
        target = [Fraction(vector.get(p, 0)) for p in self.primes]
        matrix = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row]
                               for row in self._generator_rows()]).T
        rhs = sympy.Matrix([sympy.Rational(x.numerator, x.denominator) for x in target])
        try:
            solution, params = matrix.gauss_jordan_solve(rhs)
        except ValueError:
            return None
        if params.shape[0]:
            solution = solution.subs({s: 0 for s in params})
        return DegreeElement(self, [_as_fraction(x) for x in solution])

    def from_rational(self, value) -> "DegreeElement":
        element = self.from_prime_vector({p: Fraction(e) for p, e in _prime_vector(_as_fraction(value)).items()})
        if element is None:
            raise UsageError(f"Число {value} не лежит в Q-оболочке группы {self}")
        return element

    def from_factors(self, factors: Dict[Fraction, Fraction]) -> "DegreeElement":
        """Элемент Π base^exp (base, exp рациональные)."""
        total: Dict[int, Fraction] = {}
        for base, exp in factors.items():
            for p, k in _prime_vector(_as_fraction(base)).items():
                total[p] = total.get(p, Fraction(0)) + _as_fraction(exp) * k
        element = self.from_prime_vector(total)
        if element is None:
            raise UsageError(f"Элемент {factors} не лежит в Q-оболочке группы {self}")
        return element

    def coerce(self, x: "DegreeElement") -> "DegreeElement":
        if x.group == self:
            return x
        element = self.from_prime_vector(dict(x.prime_vector))
        if element is None:
            raise UsageError(f"Элемент {x} не лежит в группе {self}")
        return element

    def parse(self, text: str) -> "DegreeElement":
        return self.from_factors(parse_degree_literal(text))

    def __eq__(self, other):
        return isinstance(other, MultRealGroup) and self.generators == other.generators

    def __hash__(self):
        return hash(("MultRealGroup", self.generators))

    def __repr__(self):
        return "<" + ", ".join(str(g) for g in self.generators) + ">"


class DegreeElement:
    """Элемент мультипликативной группы: вектор рациональных показателей над образующими."""

    __slots__ = ("group", "exponents", "_pv")

    def __init__(self, group: MultRealGroup, exponents: Sequence[Exponent]):
        exps = tuple(_as_fraction(e) for e in exponents)
        if len(exps) != len(group.generators):
            raise UsageError(
                f"Длина вектора показателей {len(exps)} не совпадает с числом образующих {len(group.generators)}"
            )
        self.group = group
        self.exponents = exps
        self._pv = None

    @property
    def prime_vector(self) -> Tuple[Tuple[int, Fraction], ...]:
        if self._pv is None:
            self._pv = self.group.prime_vector(self.exponents)
        return self._pv

    def _check(self, other: "DegreeElement"):
        if not isinstance(other, DegreeElement):
            raise UsageError(f"Ожидался элемент группы степеней, получено {type(other).__name__}")
        if other.group != self.group:
            raise UsageError(f"Элементы разных групп: {self.group} и {other.group}")

    def __mul__(self, other: "DegreeElement") -> "DegreeElement":
        self._check(other)
        return DegreeElement(self.group, [a + b for a, b in zip(self.exponents, other.exponents)])

    def __truediv__(self, other: "DegreeElement") -> "DegreeElement":
        self._check(other)
        return DegreeElement(self.group, [a - b for a, b in zip(self.exponents, other.exponents)])

    def __pow__(self, k: Exponent) -> "DegreeElement":
        k = _as_fraction(k)
        return DegreeElement(self.group, [a * k for a in self.exponents])

    def inverse(self) -> "DegreeElement":
        return self ** -1

    def is_one(self) -> bool:
        return not self.prime_vector

    def __eq__(self, other):
        return isinstance(other, DegreeElement) and self.prime_vector == other.prime_vector

    def __hash__(self):
        return hash(self.prime_vector)

    def __lt__(self, other):
        return compare(self, other) is Ordering.LESS

    def __le__(self, other):
        return compare(self, other) is not Ordering.GREATER

    def __gt__(self, other):
        return compare(self, other) is Ordering.GREATER

    def __ge__(self, other):
        return compare(self, other) is not Ordering.LESS

    def __str__(self):
        if not self.prime_vector:
            return "1"
        parts = []
        for p, e in self.prime_vector:
            if e == 1:
                parts.append(str(p))
            elif e.denominator == 1:
                parts.append(f"{p}^{e.numerator}" if e > 0 else f"{p}^({e.numerator})")
            else:
                parts.append(f"{p}^({e.numerator}/{e.denominator})")
        return "*".join(parts)

    __repr__ = __str__


# ====================================================
# Операции
# ====================================================
def _sign_of_log(vector: Sequence[Tuple[int, Fraction]]) -> int:
    """Знак Σ e_p·log p: перекрёстное возведение в степень по общему знаменателю."""
    if not vector:
        return 0
    common = lcm(*(e.denominator for _, e in vector))
    top = 1
    bottom = 1
    for p, e in vector:
        n = int(e * common)
        if n > 0:
            top *= p ** n
        else:
            bottom *= p ** (-n)
    return (top > bottom) - (top < bottom)


def compare(a: DegreeElement, b: DegreeElement) -> Ordering:
    """Точное сравнение вещественных значений двух элементов одной группы."""
    a._check(b)
    return Ordering.of(_sign_of_log((a / b).prime_vector))


def compare_values(a: DegreeElement, b: DegreeElement) -> int:
    """Сравнение по значению без проверки группы (внутри объемлющих групп); -1/0/1."""
    total: Dict[int, Fraction] = dict(a.prime_vector)
    for p, e in b.prime_vector:
        total[p] = total.get(p, Fraction(0)) - e
    return _sign_of_log(tuple(sorted((p, e) for p, e in total.items() if e)))


class Subgroup:
    """Подгруппа H объемлющей группы, заданная конечным списком образующих."""

    def __init__(self, group: MultRealGroup, generators: Iterable[DegreeElement] = ()):
        self.group = group
        self.generators: Tuple[DegreeElement, ...] = tuple(group.coerce(g) for g in generators)
        vectors = [[Fraction(dict(g.prime_vector).get(p, 0)) for p in group.primes] for g in self.generators]
        self._vectors = vectors
        self._common = lcm(*[x.denominator for v in vectors for x in v]) if vectors and vectors[0] else 1
        self._basis = integer_row_basis(scale_to_integers(vectors)) if vectors and vectors[0] else []
        self.rank = len(self._basis)

    @classmethod
    def trivial(cls, group: MultRealGroup) -> "Subgroup":
        return cls(group, ())

    @classmethod
    def whole(cls, group: MultRealGroup) -> "Subgroup":
        return cls(group, [group.generator(i) for i in range(len(group.generators))])

    def _coordinates(self, x: DegreeElement) -> Optional[List[Fraction]]:
        x = self.group.coerce(x)
        pv = dict(x.prime_vector)
        vector = [Fraction(pv.get(p, 0)) * self._common for p in self.group.primes]
        if not any(vector):
            return []
        return solve_in_basis(self._basis, vector)

    def basis_elements(self) -> List[DegreeElement]:
        """Свободный Z-базис подгруппы (подгруппа R_{>0} без кручения)."""
        elements = []
        for row in self._basis:
            vector = {p: Fraction(a, self._common) for p, a in zip(self.group.primes, row) if a}
            elements.append(self.group.from_prime_vector(vector))
        return elements

    def coordinates(self, x: DegreeElement) -> Optional[List[Fraction]]:
        """Координаты x в базисе basis_elements() (целые для x ∈ H) или None вне H^Q."""
        coords = self._coordinates(x)
        if coords == [] and self._basis:
            return [Fraction(0)] * len(self._basis)
        return coords

    def contains(self, x: DegreeElement) -> bool:
        return order_modulo(x, self) == 1

    def contains_rationally(self, x: DegreeElement) -> bool:
        return self._coordinates(x) is not None

    def __repr__(self):
        return "⟨" + ", ".join(str(g) for g in self.generators) + "⟩"


def order_modulo(r: DegreeElement, H: Subgroup) -> Optional[int]:
    """Наименьшее n ≥ 1 с r^n ∈ H; None означает бесконечный порядок."""
    if r.group != H.group:
        raise UsageError(f"Элемент {r} и подгруппа {H} лежат в разных группах")
    coords = H._coordinates(r)
    if coords is None:
        return None
    return lcm(*(c.denominator for c in coords)) if coords else 1


def is_free_family(family: Sequence[DegreeElement], H: Subgroup) -> bool:
    """Q-линейная независимость семейства по модулю H^Q."""
    group = H.group
    rows_h = [list(v) for v in H._vectors]
    rows_f = []
    for x in family:
        if x.group != group:
            raise UsageError(f"Элемент {x} и подгруппа {H} лежат в разных группах")
        pv = dict(x.prime_vector)
        rows_f.append([Fraction(pv.get(p, 0)) for p in group.primes])
    if not group.primes:
        return not family
    return rational_rank(rows_h + rows_f) - rational_rank(rows_h) == len(rows_f)


# ====================================================
# Литералы степеней: 2^(1/2)*3^(-1), 1/2, 2^-20
# ====================================================
_FACTOR = re.compile(r"\s*(\d+)(?:\s*/\s*(\d+))?(?:\s*\^\s*(?:\(\s*(-?\d+)(?:\s*/\s*(\d+))?\s*\)|(-?\d+)))?\s*")


def parse_degree_literal(text: str) -> Dict[Fraction, Fraction]:
    factors: Dict[Fraction, Fraction] = {}
    pieces = text.split("*")
    for piece in pieces:
        match = _FACTOR.fullmatch(piece)
        if not match:
            raise UsageError(f"Некорректный литерал степени: '{text}'")
        num, den, enum_, eden, eplain = match.groups()
        base = Fraction(int(num), int(den) if den else 1)
        if base <= 0:
            raise UsageError(f"Основание степени должно быть положительным: '{text}'")
        if enum_ is not None:
            exp = Fraction(int(enum_), int(eden) if eden else 1)
        elif eplain is not None:
            exp = Fraction(int(eplain))
        else:
            exp = Fraction(1)
        factors[base] = factors.get(base, Fraction(0)) + exp
    return factors


def literal_bases(text: str) -> List[Fraction]:
    return list(parse_degree_literal(text).keys())
