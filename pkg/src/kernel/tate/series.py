"""
Алгебры Тейта k{T/r} и их элементы на уровне точности ε.

Ряд хранит конечный набор членов a_I·T^I с нормой |a_I|·r^I ≥ ε; члены
ниже порога отбрасываются, и ряд помечается неточным. Ведущий член —
член максимальной нормы, при равенстве норм берётся член со старшим мономом grevlex.
"""
import random
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import sympy
from sympy import Poly, Symbol
from sympy.polys.polyerrors import PolynomialError

from src.kernel.core.errors import PrecisionError, UsageError
from src.kernel.corpoid.corpoid import Corpoid
from src.kernel.corpoid.polynomial import GradedPolynomialRing
from src.kernel.degree.groups import DegreeElement, MultRealGroup, Subgroup, literal_bases
from src.kernel.tate.valued_field import ValuedBaseField, parse_eps

Exponents = Tuple[int, ...]
Radius = Union[str, DegreeElement]


def grevlex_key(exps: Exponents) -> Tuple:
    return (sum(exps), tuple(-e for e in reversed(exps)))


def _radius_primes(radius: Radius) -> List[int]:
    if isinstance(radius, DegreeElement):
        return [p for p, _ in radius.prime_vector]
    primes = []
    for base in literal_bases(str(radius)):
        primes.extend(sympy.primefactors(base.numerator * base.denominator))
    return primes


class TateRing:
    """k{T_1/r_1, ..., T_n/r_n} над полным нормированным полем."""

    def __init__(self, field: ValuedBaseField, variables: Sequence[Tuple[str, Radius]], eps: Optional[str] = None):
        primes = set(field.group.primes)
        for _, radius in variables:
            primes.update(_radius_primes(radius))
        self.field = field
        self.group = MultRealGroup.over_primes(primes)
        self.symbols: Tuple[Symbol, ...] = tuple(Symbol(name) for name, _ in variables)
        if len(set(self.symbols)) != len(self.symbols):
            raise UsageError(f"Повторяющиеся переменные алгебры Тейта: {[str(s) for s in self.symbols]}")
        clash = set(self.symbols) & set(field.symbols)
        if clash:
            raise UsageError(f"Переменные совпадают с символами поля: {sorted(map(str, clash))}")
        self.radii: Tuple[DegreeElement, ...] = tuple(self._radius(r) for _, r in variables)
        self.eps_text = eps
        epsilon = parse_eps(field, eps)
        self.eps: Optional[DegreeElement] = None if epsilon is None else self.group.coerce(epsilon)
        # Γ·|k^×| в объемлющей группе кольца
        generators = [self.group.coerce(g) for g in field.gamma.generators]
        generators += [self.group.coerce(g) for g in field.value_group_generators()]
        self.gamma = Subgroup(self.group, generators)

    def _radius(self, radius: Radius) -> DegreeElement:
        value = self.group.coerce(radius) if isinstance(radius, DegreeElement) else self.group.parse(str(radius))
        return value

    # ==========================
    # Factory methods
    # ==========================
    def with_eps(self, eps: Optional[str]) -> "TateRing":
        return TateRing(self.field, list(zip(map(str, self.symbols), self.radii)), eps)

    def series(self, terms: Dict[Exponents, object], exact: bool = True) -> "TateSeries":
        return TateSeries(self, terms, exact)

    def zero(self) -> "TateSeries":
        return TateSeries(self, {})

    def one(self) -> "TateSeries":
        return self.constant(self.field.one())

    def constant(self, c) -> "TateSeries":
        return TateSeries(self, {(0,) * len(self.symbols): c})

    def monomial(self, c, exps: Exponents) -> "TateSeries":
        return TateSeries(self, {tuple(exps): c})

    def variable(self, symbol) -> "TateSeries":
        i = self.index(symbol)
        return self.monomial(self.field.one(), tuple(1 if j == i else 0 for j in range(len(self.symbols))))

    def from_expr(self, expr) -> "TateSeries":
        """Многочлен от переменных кольца с коэффициентами из поля."""
        expr = sympy.expand(sympy.sympify(expr))
        if expr == 0:
            return self.zero()
        if not self.symbols:
            return self.constant(self.field.from_expr(expr))
        try:
            pairs = Poly(expr, *self.symbols, domain="EX").terms()
        except PolynomialError as e:
            raise UsageError(f"{expr} не является многочленом от {[str(s) for s in self.symbols]}: {e}")
        terms = {}
        for exps, c in pairs:
            terms[tuple(exps)] = self.field.from_expr(sympy.sympify(c))
        return TateSeries(self, terms)

    def random_series(self, rng: random.Random, terms: int = 3, degree: int = 2) -> "TateSeries":
        result = {}
        for _ in range(terms):
            exps = tuple(rng.randint(0, degree) for _ in self.symbols)
            result[exps] = self.field.random_element(rng)
        return TateSeries(self, result)

    # ------------------------
    # Структура
    # ------------------------
    def index(self, symbol) -> int:
        symbol = Symbol(str(symbol))
        if symbol not in self.symbols:
            raise UsageError(f"Неизвестная переменная {symbol} в {self}")
        return self.symbols.index(symbol)

    def monomial_norm(self, exps: Exponents) -> DegreeElement:
        result = self.group.one()
        for r, e in zip(self.radii, exps):
            if e:
                result = result * r ** e
        return result

    def coefficient_norm(self, c) -> Optional[DegreeElement]:
        value = self.field.norm(c)
        return None if value is None else self.group.coerce(value)

    def in_gamma(self, value: DegreeElement) -> bool:
        return self.gamma.contains(self.group.coerce(value))

    def residue_corpoid(self) -> Corpoid:
        return self.field.residue_corpoid(self.group)

    def residue_ring(self) -> GradedPolynomialRing:
        """k̃[r\\T]: переменные с теми же именами и степенями r_i."""
        return GradedPolynomialRing(self.residue_corpoid(), list(zip(map(str, self.symbols), self.radii)))

    def __eq__(self, other):
        return (
            isinstance(other, TateRing)
            and other.field is self.field
            and other.symbols == self.symbols
            and other.radii == self.radii
            and other.eps == self.eps
        )

    def __hash__(self):
        return hash((self.field.name, self.symbols, self.radii))

    def __repr__(self):
        variables = ", ".join(f"{s}:{r}" for s, r in zip(self.symbols, self.radii))
        return f"{self.field.name}{{{variables}}}"


class TateSeries:
    __slots__ = ("ring", "terms", "exact", "_norms")

    def __init__(self, ring: TateRing, terms: Dict[Exponents, object], exact: bool = True):
        self.ring = ring
        field = ring.field
        clean: Dict[Exponents, object] = {}
        norms: Dict[Exponents, DegreeElement] = {}
        for exps, c in terms.items():
            if len(exps) != len(ring.symbols) or any(e < 0 for e in exps):
                raise UsageError(f"Некорректный вектор показателей {exps} для {ring}")
            if field.is_zero(c):
                if not getattr(c, "exact", True):
                    exact = False
                continue
            try:
                value = ring.coefficient_norm(c)
            except PrecisionError:
                exact = False
                continue
            value = value * ring.monomial_norm(exps)
            if ring.eps is not None and value < ring.eps:
                exact = False
                continue
            clean[tuple(exps)] = c
            norms[tuple(exps)] = value
        self.terms = clean
        self.exact = exact and all(getattr(c, "exact", True) for c in clean.values())
        self._norms = norms

    # ------------------------
    # Нормы и ведущий член
    # ------------------------
    @property
    def is_zero(self) -> bool:
        """Нет представленных членов (точный ноль или ноль на данной точности)."""
        return not self.terms

    def term_norm(self, exps: Exponents) -> DegreeElement:
        return self._norms[exps]

    def gauss_norm(self) -> Optional[DegreeElement]:
        """max |a_I|·r^I; None: точный ноль."""
        if not self.terms:
            if self.exact:
                return None
            raise PrecisionError(f"Все члены ряда ниже порога точности ε = {self.ring.eps}")
        return max(self._norms.values())

    def leading_term(self) -> Tuple[Exponents, object, DegreeElement]:
        if not self.terms:
            raise UsageError("Ведущий член нулевого ряда не определён")
        top = self.gauss_norm()
        exps = max((e for e, v in self._norms.items() if v == top), key=grevlex_key)
        return exps, self.terms[exps], top

    def top_terms(self) -> Dict[Exponents, object]:
        """Члены максимальной нормы."""
        if not self.terms:
            return {}
        top = self.gauss_norm()
        return {e: c for e, c in self.terms.items() if self._norms[e] == top}

    # ------------------------
    # Арифметика
    # ------------------------
    def _check(self, other: "TateSeries"):
        if not isinstance(other, TateSeries) or other.ring != self.ring:
            raise UsageError("Ряды из разных алгебр Тейта")

    def __add__(self, other: "TateSeries") -> "TateSeries":
        self._check(other)
        field = self.ring.field
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            terms[exps] = field.add(terms[exps], c) if exps in terms else c
        return TateSeries(self.ring, terms, self.exact and other.exact)

    def __neg__(self) -> "TateSeries":
        field = self.ring.field
        return TateSeries(self.ring, {e: field.neg(c) for e, c in self.terms.items()}, self.exact)

    def __sub__(self, other: "TateSeries") -> "TateSeries":
        return self + (-other)

    def __mul__(self, other: "TateSeries") -> "TateSeries":
        self._check(other)
        field = self.ring.field
        terms: Dict[Exponents, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                product = field.mul(c1, c2)
                terms[exps] = field.add(terms[exps], product) if exps in terms else product
        return TateSeries(self.ring, terms, self.exact and other.exact)

    def __pow__(self, k: int) -> "TateSeries":
        if k < 0:
            raise UsageError("Отрицательная степень ряда")
        result = self.ring.one()
        for _ in range(k):
            result = result * self
        return result

    def scale(self, c, exps: Exponents) -> "TateSeries":
        """c·T^exps·self."""
        field = self.ring.field
        terms = {
            tuple(a + b for a, b in zip(e, exps)): field.mul(c, v)
            for e, v in self.terms.items()
        }
        return TateSeries(self.ring, terms, self.exact)

    def without(self, exps: Exponents) -> "TateSeries":
        terms = {e: c for e, c in self.terms.items() if e != exps}
        return TateSeries(self.ring, terms, self.exact)

    def specialize(self, values: Dict[Symbol, object], target: TateRing) -> "TateSeries":
        """Подстановка элементов поля вместо части переменных; остальные переходят в target."""
        field = self.ring.field
        keep = [self.ring.index(s) for s in target.symbols]
        terms: Dict[Exponents, object] = {}
        for exps, c in self.terms.items():
            value = c
            for symbol, e in zip(self.ring.symbols, exps):
                if e and symbol in values:
                    value = field.mul(value, _power(field, values[symbol], e))
            key = tuple(exps[i] for i in keep)
            terms[key] = field.add(terms[key], value) if key in terms else value
        return TateSeries(target, terms, self.exact)

    def to_expr(self) -> sympy.Expr:
        field = self.ring.field
        total = sympy.Integer(0)
        for exps, c in self.terms.items():
            total += field.to_expr(c) * sympy.Mul(*[s ** e for s, e in zip(self.ring.symbols, exps)])
        return sympy.expand(total)

    def __eq__(self, other):
        if not isinstance(other, TateSeries) or other.ring != self.ring:
            return False
        return (self - other).is_zero

    def __hash__(self):
        return hash(tuple(sorted(self.terms)))

    def __repr__(self):
        text = str(self.to_expr())
        return text if self.exact else f"{text} + O(ε)"


def _power(field: ValuedBaseField, c, e: int):
    result = field.one()
    for _ in range(e):
        result = field.mul(result, c)
    return result


def gauss_norm(f: TateSeries) -> Optional[DegreeElement]:
    return f.gauss_norm()


def family_norms(family: Iterable[TateSeries]) -> List[Optional[DegreeElement]]:
    return [f.gauss_norm() for f in family]
