"""
Расщеплённые корпоиды F = F¹·⟨сечения⟩.

Группа степеней G = 𝔡(F^×) задана свободным Z-базисом g_1..g_m; сечение t_i имеет
степень g_i, и однородный элемент степени d записывается как c·t^α, где α: целые
координаты d в базисе. Сложение определено только внутри одной степени.
"""
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import sympy
from sympy import Symbol

from src.kernel.core.errors import UsageError
from src.kernel.corpoid.base_field import BaseField
from src.kernel.degree.groups import DegreeElement, MultRealGroup, Subgroup, is_free_family


class Corpoid:
    def __init__(self, base: BaseField, group: MultRealGroup, sections: Sequence[Tuple[str, DegreeElement]] = ()):
        self.base = base
        self.group = group
        self.section_degrees: Tuple[DegreeElement, ...] = tuple(group.coerce(d) for _, d in sections)
        self.section_symbols: Tuple[Symbol, ...] = tuple(Symbol(name) for name, _ in sections)
        clash = set(self.section_symbols) & set(base.symbols)
        if clash:
            raise UsageError(f"Имена сечений совпадают с символами поля: {sorted(map(str, clash))}")
        if not is_free_family(list(self.section_degrees), Subgroup.trivial(group)):
            raise UsageError(f"Степени сечений {list(map(str, self.section_degrees))} не свободны")
        self.degrees = Subgroup(group, self.section_degrees)

    # ==========================
    # Factory methods
    # ==========================
    @classmethod
    def split(cls, base: BaseField, group: MultRealGroup, generators: Sequence[DegreeElement] = (),
              prefix: str = "t") -> "Corpoid":
        """Корпоид над base с группой степеней ⟨generators⟩; сечения: вычисленный Z-базис."""
        basis = [d for d in Subgroup(group, generators).basis_elements() if not d.is_one()]
        if len(basis) == 1:
            names = [prefix]
        else:
            names = [f"{prefix}{i + 1}" for i in range(len(basis))]
        return cls(base, group, list(zip(names, basis)))

    @classmethod
    def trivial(cls, base: BaseField, group: Optional[MultRealGroup] = None) -> "Corpoid":
        return cls(base, group or MultRealGroup([]), [])

    # ------------------------
    # Степени и координаты
    # ------------------------
    def coordinates(self, degree: DegreeElement) -> Tuple[int, ...]:
        """Целые показатели сечений для степени из G; вне G: ошибка."""
        degree = self.group.coerce(degree)
        if not self.section_degrees:
            if degree.is_one():
                return ()
            raise UsageError(f"Степень {degree} не лежит в 𝔡(F^×) = {{1}}")
        coords = self._section_coordinates(degree)
        if coords is None or any(c.denominator != 1 for c in coords):
            raise UsageError(f"Степень {degree} не лежит в 𝔡(F^×) = {self.degrees}")
        return tuple(int(c) for c in coords)

    def _section_coordinates(self, degree: DegreeElement) -> Optional[List[Fraction]]:
        primes = self.group.primes
        pv = dict(degree.prime_vector)
        columns = [[dict(g.prime_vector).get(p, 0) for p in primes] for g in self.section_degrees]
        matrix = sympy.Matrix(len(primes), len(columns), lambda i, j: sympy.Rational(columns[j][i]))
        rhs = sympy.Matrix([sympy.Rational(pv.get(p, 0)) for p in primes])
        try:
            solution, params = matrix.gauss_jordan_solve(rhs)
        except ValueError:
            return None
        if params.shape[0]:
            return None
        return [Fraction(int(sympy.Rational(x).p), int(sympy.Rational(x).q)) for x in solution]

    def contains_degree(self, degree: DegreeElement) -> bool:
        try:
            self.coordinates(degree)
        except UsageError:
            return False
        return True

    def degree_of(self, exponents: Sequence[int]) -> DegreeElement:
        result = self.group.one()
        for d, e in zip(self.section_degrees, exponents):
            result = result * d ** e
        return result

    # ------------------------
    # Элементы
    # ------------------------
    def element(self, coefficient, degree: Optional[DegreeElement] = None) -> "CorpoidElement":
        degree = self.group.one() if degree is None else self.group.coerce(degree)
        self.coordinates(degree)
        return CorpoidElement(self, self.base.normalize(self.base.check_symbols(coefficient)), degree)

    def zero(self, degree: Optional[DegreeElement] = None) -> "CorpoidElement":
        return self.element(0, degree)

    def one(self) -> "CorpoidElement":
        return self.element(1)

    def section(self, index: int) -> "CorpoidElement":
        return CorpoidElement(self, sympy.Integer(1), self.section_degrees[index])

    def split_expr(self, expr) -> List[Tuple[sympy.Expr, Tuple[int, ...]]]:
        """Раскладывает выражение в F¹[t^±] на пары (коэффициент, показатели сечений)."""
        expr = sympy.expand(sympy.sympify(expr))
        groups = {}
        for term in sympy.Add.make_args(expr):
            exps = []
            rest = term
            for t in self.section_symbols:
                e = sympy.Integer(0)
                for factor in sympy.Mul.make_args(term):
                    base, ex = factor.as_base_exp()
                    if base == t:
                        e += ex
                    elif factor.has(t):
                        raise UsageError(f"Сечение {t} входит в {term} не как степень")
                if not e.is_integer:
                    raise UsageError(f"Сечение {t} входит в {term} с нецелым показателем {e}")
                rest = rest * t ** (-e)
                exps.append(int(e))
            key = tuple(exps)
            groups[key] = groups.get(key, 0) + rest
        return [(c, k) for k, c in groups.items()]

    def from_expr(self, expr, degree: Optional[DegreeElement] = None) -> "CorpoidElement":
        """Однородный элемент из выражения c·t^α; смесь разных степеней: ошибка."""
        parts = [(self.base.normalize(self.base.check_symbols(c)), k) for c, k in self.split_expr(expr)]
        parts = [(c, k) for c, k in parts if c != 0]
        if not parts:
            return self.zero(degree)
        if len(parts) > 1:
            raise UsageError(f"Элемент {expr} неоднороден: несколько степеней сечений")
        coeff, exps = parts[0]
        found = self.degree_of(exps)
        if degree is not None and found != self.group.coerce(degree):
            raise UsageError(f"Элемент {expr} имеет степень {found}, ожидалась {degree}")
        return CorpoidElement(self, coeff, found)

    def __eq__(self, other):
        return (
            isinstance(other, Corpoid)
            and self.base == other.base
            and self.section_symbols == other.section_symbols
            and self.section_degrees == other.section_degrees
        )

    def __hash__(self):
        return hash((self.base, self.section_symbols, self.section_degrees))

    def __repr__(self):
        if not self.section_symbols:
            return f"split({self.base.name})"
        secs = ", ".join(f"{t}:{d}" for t, d in zip(self.section_symbols, self.section_degrees))
        return f"split({self.base.name}, {secs})"


class CorpoidElement:
    """Однородный элемент c·t^α корпоида; ноль хранит свою степень (0^d)."""

    __slots__ = ("corpoid", "coefficient", "degree")

    def __init__(self, corpoid: Corpoid, coefficient, degree: DegreeElement):
        self.corpoid = corpoid
        self.coefficient = coefficient
        self.degree = degree

    def _check(self, other: "CorpoidElement"):
        if not isinstance(other, CorpoidElement) or other.corpoid != self.corpoid:
            raise UsageError("Элементы разных корпоидов")

    @property
    def is_zero(self) -> bool:
        return self.coefficient == 0

    @property
    def exponents(self) -> Tuple[int, ...]:
        return self.corpoid.coordinates(self.degree)

    def __mul__(self, other: "CorpoidElement") -> "CorpoidElement":
        self._check(other)
        base = self.corpoid.base
        return CorpoidElement(self.corpoid, base.mul(self.coefficient, other.coefficient), self.degree * other.degree)

    def __add__(self, other: "CorpoidElement") -> "CorpoidElement":
        self._check(other)
        if self.degree != other.degree:
            raise UsageError(f"Сложение элементов разных степеней: {self.degree} и {other.degree}")
        base = self.corpoid.base
        return CorpoidElement(self.corpoid, base.add(self.coefficient, other.coefficient), self.degree)

    def __neg__(self) -> "CorpoidElement":
        return CorpoidElement(self.corpoid, self.corpoid.base.neg(self.coefficient), self.degree)

    def __sub__(self, other: "CorpoidElement") -> "CorpoidElement":
        return self + (-other)

    def inverse(self) -> "CorpoidElement":
        if self.is_zero:
            raise UsageError(f"Обращение нуля степени {self.degree}")
        return CorpoidElement(self.corpoid, self.corpoid.base.inverse(self.coefficient), self.degree.inverse())

    def __truediv__(self, other: "CorpoidElement") -> "CorpoidElement":
        return self * other.inverse()

    def __pow__(self, k: int) -> "CorpoidElement":
        if k < 0:
            return self.inverse() ** (-k)
        base = self.corpoid.base
        return CorpoidElement(self.corpoid, base.power(self.coefficient, k), self.degree ** k)

    def to_expr(self) -> sympy.Expr:
        monomial = sympy.Mul(*[t ** e for t, e in zip(self.corpoid.section_symbols, self.exponents)])
        return self.coefficient * monomial

    def __eq__(self, other):
        return (
            isinstance(other, CorpoidElement)
            and other.corpoid == self.corpoid
            and other.degree == self.degree
            and self.corpoid.base.equal(self.coefficient, other.coefficient)
        )

    def __hash__(self):
        return hash((self.degree, str(self.coefficient)))

    def __repr__(self):
        if self.is_zero:
            return f"0^{self.degree}"
        return f"({self.coefficient}, {self.degree})"


def corpoid_mul(a: CorpoidElement, b: CorpoidElement) -> CorpoidElement:
    return a * b


def corpoid_add(a: CorpoidElement, b: CorpoidElement) -> CorpoidElement:
    return a + b
