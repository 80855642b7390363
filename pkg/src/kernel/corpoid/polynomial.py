"""
Градуированные кольца многочленов F[r\\T] над расщеплённым корпоидом.

Переменная T_i имеет степень r_i; член a_I·T^I однороден степени 𝔡(a_I)·r^I.
Пары взаимно обратных переменных (T, S) со степенями r, r⁻¹ задают кольца
Лорана F[r\\T, r⁻¹\\S]/(ST - 1); соотношения ST - 1 добавляются к каждому идеалу.
"""
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import sympy
from sympy import Poly, Symbol
from sympy.polys.polyerrors import PolynomialError

from src.kernel.core.errors import UsageError
from src.kernel.corpoid.corpoid import Corpoid, CorpoidElement
from src.kernel.degree.groups import DegreeElement

Exponents = Tuple[int, ...]


class GradedPolynomialRing:
    def __init__(
        self,
        corpoid: Corpoid,
        variables: Sequence[Tuple[str, DegreeElement]],
        inverse_pairs: Sequence[Tuple[int, int]] = (),
    ):
        self.corpoid = corpoid
        self.symbols: Tuple[Symbol, ...] = tuple(Symbol(name) for name, _ in variables)
        self.degrees: Tuple[DegreeElement, ...] = tuple(corpoid.group.coerce(d) for _, d in variables)
        if len(set(self.symbols)) != len(self.symbols):
            raise UsageError(f"Повторяющиеся переменные: {[str(s) for s in self.symbols]}")
        clash = set(self.symbols) & (set(corpoid.section_symbols) | set(corpoid.base.symbols))
        if clash:
            raise UsageError(f"Переменные совпадают с символами корпоида: {sorted(map(str, clash))}")
        for i, j in inverse_pairs:
            if not (self.degrees[i] * self.degrees[j]).is_one():
                raise UsageError(
                    f"Пара {self.symbols[i]}, {self.symbols[j]}: степени {self.degrees[i]} и {self.degrees[j]} не взаимно обратны"
                )
        self.inverse_pairs: Tuple[Tuple[int, int], ...] = tuple(inverse_pairs)

    # ==========================
    # Factory methods
    # ==========================
    @classmethod
    def laurent(cls, corpoid: Corpoid, variables: Sequence[Tuple[str, DegreeElement]]) -> "GradedPolynomialRing":
        """F[r\\T, r⁻¹\\S]: к каждой T добавляется обратная S (имя T + '_inv')."""
        full = list(variables)
        pairs = []
        n = len(variables)
        for i, (name, degree) in enumerate(variables):
            full.append((f"{name}_inv", degree.inverse()))
            pairs.append((i, n + i))
        return cls(corpoid, full, pairs)

    def with_variables(self, extra: Sequence[Tuple[str, DegreeElement]]) -> "GradedPolynomialRing":
        return GradedPolynomialRing(
            self.corpoid, list(zip(map(str, self.symbols), self.degrees)) + list(extra), self.inverse_pairs
        )

    def without_variables(self, symbols: Iterable[Symbol]) -> "GradedPolynomialRing":
        drop = set(symbols)
        kept = [(str(s), d) for s, d in zip(self.symbols, self.degrees) if s not in drop]
        index = {s: i for i, (s, _) in enumerate((Symbol(n), d) for n, d in kept)}
        pairs = [
            (index[self.symbols[i]], index[self.symbols[j]])
            for i, j in self.inverse_pairs
            if self.symbols[i] not in drop and self.symbols[j] not in drop
        ]
        return GradedPolynomialRing(self.corpoid, kept, pairs)

    # ------------------------
    # Структура
    # ------------------------
    @property
    def group(self):
        return self.corpoid.group

    def index(self, symbol) -> int:
        symbol = Symbol(str(symbol))
        if symbol not in self.symbols:
            raise UsageError(f"Неизвестная переменная {symbol}")
        return self.symbols.index(symbol)

    def degree_of(self, symbol) -> DegreeElement:
        return self.degrees[self.index(symbol)]

    def monomial_degree(self, exponents: Exponents) -> DegreeElement:
        result = self.group.one()
        for d, e in zip(self.degrees, exponents):
            if e:
                result = result * d ** e
        return result

    def relations(self) -> List[sympy.Expr]:
        return [self.symbols[i] * self.symbols[j] - 1 for i, j in self.inverse_pairs]

    # ------------------------
    # Элементы
    # ------------------------
    def zero(self, degree: Optional[DegreeElement] = None) -> "GradedPolynomial":
        return GradedPolynomial(self, {}, self.group.one() if degree is None else degree)

    def one(self) -> "GradedPolynomial":
        return self.constant(self.corpoid.one())

    def constant(self, c: CorpoidElement) -> "GradedPolynomial":
        return GradedPolynomial(self, {(0,) * len(self.symbols): c}, c.degree)

    def variable(self, symbol) -> "GradedPolynomial":
        i = self.index(symbol)
        exps = tuple(1 if j == i else 0 for j in range(len(self.symbols)))
        return GradedPolynomial(self, {exps: self.corpoid.one()}, self.degrees[i])

    def from_expr(self, expr, degree: Optional[DegreeElement] = None) -> "GradedPolynomial":
        """Однородный многочлен из выражения; члены разных степеней: ошибка."""
        expr = sympy.expand(sympy.sympify(expr))
        if expr == 0:
            return self.zero(degree)
        n = len(self.symbols)
        if n:
            try:
                pairs = Poly(expr, *self.symbols, domain="EX").terms()
            except PolynomialError as e:
                raise UsageError(f"{expr} не является многочленом от {[str(s) for s in self.symbols]}: {e}")
        else:
            pairs = [((), expr)]
        terms: Dict[Exponents, CorpoidElement] = {}
        total: Optional[DegreeElement] = None if degree is None else self.group.coerce(degree)
        for exps, coeff in pairs:
            c = self.corpoid.from_expr(sympy.sympify(coeff))
            if c.is_zero:
                continue
            term_degree = c.degree * self.monomial_degree(exps)
            if total is None:
                total = term_degree
            elif term_degree != total:
                raise UsageError(f"Многочлен {expr} неоднороден: степени {total} и {term_degree}")
            terms[tuple(exps)] = c
        return GradedPolynomial(self, terms, total if total is not None else self.group.one())

    def __eq__(self, other):
        return (
            isinstance(other, GradedPolynomialRing)
            and other.corpoid == self.corpoid
            and other.symbols == self.symbols
            and other.degrees == self.degrees
            and other.inverse_pairs == self.inverse_pairs
        )

    def __hash__(self):
        return hash((self.corpoid, self.symbols, self.degrees))

    def __repr__(self):
        variables = ", ".join(f"{d}\\{s}" for s, d in zip(self.symbols, self.degrees))
        return f"{self.corpoid}[{variables}]"


class GradedPolynomial:
    """Однородный многочлен: словарь показатели → ненулевой коэффициент, плюс объявленная степень."""

    __slots__ = ("ring", "terms", "degree")

    def __init__(self, ring: GradedPolynomialRing, terms: Dict[Exponents, CorpoidElement], degree: DegreeElement):
        self.ring = ring
        self.degree = ring.group.coerce(degree)
        clean: Dict[Exponents, CorpoidElement] = {}
        for exps, c in terms.items():
            if c.is_zero:
                continue
            if c.degree * ring.monomial_degree(exps) != self.degree:
                raise UsageError(f"Член {c}·T^{exps} не однороден степени {self.degree}")
            clean[tuple(exps)] = c
        self.terms = clean

    def _check(self, other: "GradedPolynomial"):
        if not isinstance(other, GradedPolynomial) or other.ring != self.ring:
            raise UsageError("Многочлены из разных колец")

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "GradedPolynomial") -> "GradedPolynomial":
        self._check(other)
        if other.is_zero and other.degree != self.degree:
            return self
        if self.is_zero and other.degree != self.degree:
            return other
        if self.degree != other.degree:
            raise UsageError(f"Сложение многочленов разных степеней: {self.degree} и {other.degree}")
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            terms[exps] = terms[exps] + c if exps in terms else c
        return GradedPolynomial(self.ring, terms, self.degree)

    def __neg__(self) -> "GradedPolynomial":
        return GradedPolynomial(self.ring, {e: -c for e, c in self.terms.items()}, self.degree)

    def __sub__(self, other: "GradedPolynomial") -> "GradedPolynomial":
        return self + (-other)

    def __mul__(self, other: "GradedPolynomial") -> "GradedPolynomial":
        if isinstance(other, CorpoidElement):
            other = self.ring.constant(other)
        self._check(other)
        degree = self.degree * other.degree
        terms: Dict[Exponents, CorpoidElement] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                product = c1 * c2
                terms[exps] = terms[exps] + product if exps in terms else product
        return GradedPolynomial(self.ring, terms, degree)

    def __pow__(self, k: int) -> "GradedPolynomial":
        if k < 0:
            raise UsageError("Отрицательная степень многочлена")
        result = self.ring.one()
        for _ in range(k):
            result = result * self
        return result

    def substitute(self, values: Dict[Symbol, "GradedPolynomial"]) -> "GradedPolynomial":
        """Подстановка однородных многочленов той же степени вместо переменных."""
        result = self.ring.zero(self.degree)
        for exps, c in self.terms.items():
            term = self.ring.constant(c)
            for symbol, e in zip(self.ring.symbols, exps):
                if not e:
                    continue
                value = values.get(symbol)
                if value is None:
                    value = self.ring.variable(symbol)
                elif value.degree != self.ring.degree_of(symbol) and not value.is_zero:
                    raise UsageError(f"Подстановка {symbol} -> {value.to_expr()}: степень {value.degree} вместо {self.ring.degree_of(symbol)}")
                term = term * value ** e
            result = result + term
        return result

    def to_expr(self) -> sympy.Expr:
        total = sympy.Integer(0)
        for exps, c in self.terms.items():
            total += c.to_expr() * sympy.Mul(*[s ** e for s, e in zip(self.ring.symbols, exps)])
        return sympy.expand(total)

    def __eq__(self, other):
        if not isinstance(other, GradedPolynomial) or other.ring != self.ring:
            return False
        if self.is_zero and other.is_zero:
            return True
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.degree, tuple(sorted(self.terms))))

    def __repr__(self):
        if self.is_zero:
            return f"0^{self.degree}"
        return str(self.to_expr())


def poly_mul(p: GradedPolynomial, q: GradedPolynomial) -> GradedPolynomial:
    return p * q
