"""
Поле рядов Лорана F_q((t)) с абсолютной точностью.

Ряд хранит известные коэффициенты при t^k (k < precision); члены t^k с
k ≥ precision неизвестны. precision = None означает точный многочлен Лорана.
"""
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Optional

import sympy
from sympy import Symbol

from src.kernel.core.enums import ValuedFieldKind
from src.kernel.core.errors import PrecisionError, UnsupportedError, UsageError
from src.kernel.corpoid.base_field import BaseField
from src.kernel.degree.groups import DegreeElement
from src.kernel.tate.valued_field import ValuedBaseField, ambient_group


@dataclass(frozen=True)
class LaurentSeries:
    coefficients: Dict[int, sympy.Expr]
    precision: Optional[int] = None

    @property
    def exact(self) -> bool:
        return self.precision is None

    @property
    def valuation(self) -> Optional[int]:
        """Показатель младшего известного ненулевого члена (None для O(t^N) и нуля)."""
        return min(self.coefficients) if self.coefficients else None

    def __repr__(self):
        parts = [f"({c})*t^{k}" for k, c in sorted(self.coefficients.items())]
        if self.precision is not None:
            parts.append(f"O(t^{self.precision})")
        return " + ".join(parts) if parts else "0"


def _min_precision(*values: Optional[int]) -> Optional[int]:
    known = [v for v in values if v is not None]
    return min(known) if known else None


class LaurentField(ValuedBaseField):
    """F_q((t)) с |t| = t_norm < 1; относительная точность обращения: relative_precision."""
    kind = ValuedFieldKind.LAURENT

    def __init__(self, residue: BaseField, t_norm: Fraction, relative_precision: int,
                 gamma: Iterable[Fraction] = (), symbol: str = "t"):
        if not residue.is_finite:
            raise UnsupportedError(f"Ряды Лорана строятся только над конечными полями, получено {residue}")
        t_norm = Fraction(t_norm)
        if not 0 < t_norm < 1:
            raise UsageError(f"|t| = {t_norm} должно лежать в (0, 1)")
        if relative_precision < 1:
            raise UsageError(f"Точность N = {relative_precision} должна быть положительной")
        gamma = list(gamma)
        super().__init__(
            f"{residue.name}(({symbol}))",
            residue,
            ambient_group([p for p in sympy.primefactors(t_norm.numerator * t_norm.denominator)], gamma),
            gamma,
        )
        self.t = Symbol(symbol)
        self.t_norm = t_norm
        self.relative_precision = int(relative_precision)
        if self.t in residue.symbols:
            raise UsageError(f"Символ {self.t} уже используется в {residue}")
        self.exact = False

    @property
    def symbols(self):
        return self.residue.symbols + (self.t,)

    # ==========================
    # Factory methods
    # ==========================
    def series(self, coefficients: Dict[int, object], precision: Optional[int] = None) -> LaurentSeries:
        clean = {}
        for k, c in coefficients.items():
            if precision is not None and k >= precision:
                continue
            c = self.residue.normalize(c)
            if c != 0:
                clean[int(k)] = c
        return LaurentSeries(clean, precision)

    def from_expr(self, expr) -> LaurentSeries:
        """Многочлен Лорана от t или дробь таких многочленов (знаменатель обращается)."""
        if isinstance(expr, LaurentSeries):
            return expr
        expr = sympy.sympify(expr)
        extra = expr.free_symbols - set(self.residue.symbols) - {self.t}
        if extra:
            raise UsageError(f"Коэффициент {expr} содержит символы вне {self.name}: {sorted(map(str, extra))}")
        num, den = sympy.fraction(sympy.together(expr))
        value = self._laurent_polynomial(num)
        if den != 1:
            value = self.mul(value, self.inverse(self._laurent_polynomial(den)))
        return value

    def _laurent_polynomial(self, expr) -> LaurentSeries:
        expr = sympy.expand(expr)
        coefficients: Dict[int, sympy.Expr] = {}
        for term in sympy.Add.make_args(expr):
            k = 0
            rest = sympy.Integer(1)
            for factor in sympy.Mul.make_args(term):
                base, e = factor.as_base_exp()
                if base == self.t:
                    if not e.is_integer:
                        raise UsageError(f"Нецелая степень {self.t} в {expr}")
                    k += int(e)
                else:
                    rest *= factor
            coefficients[k] = coefficients.get(k, 0) + rest
        return self.series(coefficients)

    def to_expr(self, c: LaurentSeries) -> sympy.Expr:
        return sympy.Add(*[v * self.t ** k for k, v in sorted(c.coefficients.items())])

    # ------------------------
    # Арифметика
    # ------------------------
    def add(self, a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
        precision = _min_precision(a.precision, b.precision)
        coefficients = dict(a.coefficients)
        for k, v in b.coefficients.items():
            coefficients[k] = coefficients.get(k, 0) + v
        return self.series(coefficients, precision)

    def neg(self, a: LaurentSeries) -> LaurentSeries:
        return self.series({k: -v for k, v in a.coefficients.items()}, a.precision)

    def mul(self, a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
        va, vb = a.valuation, b.valuation
        if (va is None and a.exact) or (vb is None and b.exact):
            return self.series({})
        if va is None and vb is None:
            return self.series({}, a.precision + b.precision)
        # точность произведения: min(N_a + v_b, N_b + v_a)
        bounds = []
        if a.precision is not None:
            bounds.append(a.precision + (vb if vb is not None else b.precision))
        if b.precision is not None:
            bounds.append(b.precision + (va if va is not None else a.precision))
        precision = min(bounds) if bounds else None
        coefficients: Dict[int, sympy.Expr] = {}
        for i, x in a.coefficients.items():
            for j, y in b.coefficients.items():
                coefficients[i + j] = coefficients.get(i + j, 0) + x * y
        return self.series(coefficients, precision)

    def inverse(self, a: LaurentSeries) -> LaurentSeries:
        v = a.valuation
        if v is None:
            if a.exact:
                raise UsageError("Обращение нуля в поле рядов Лорана")
            raise PrecisionError(f"Обращение {a}: нет известных ненулевых членов")
        known = a.precision - v if a.precision is not None else None
        n = self.relative_precision if known is None else min(known, self.relative_precision)
        if len(a.coefficients) == 1 and a.exact:
            return self.series({-v: self.residue.inverse(a.coefficients[v])})
        # b_0 = 1/a_0, b_k = -b_0·Σ_{j=1..k} a_j·b_{k-j}
        shifted = {k - v: c for k, c in a.coefficients.items()}
        b0 = self.residue.inverse(shifted[0])
        b = [b0]
        for k in range(1, n):
            total = sum((shifted.get(j, 0) * b[k - j] for j in range(1, k + 1)), sympy.Integer(0))
            b.append(self.residue.normalize(-b0 * total))
        return self.series({i - v: c for i, c in enumerate(b)}, n - v)

    def is_zero(self, a: LaurentSeries) -> bool:
        return not a.coefficients

    def equal(self, a: LaurentSeries, b: LaurentSeries) -> bool:
        return self.is_zero(self.sub(a, b))

    # ------------------------
    # Норма и вычеты
    # ------------------------
    def norm(self, c: LaurentSeries) -> Optional[DegreeElement]:
        v = c.valuation
        if v is None:
            if c.exact:
                return None
            raise PrecisionError(f"Норма {c} не определяется на точности t^{c.precision}")
        return self.uniformizer_norm() ** v

    def uniformizer(self) -> sympy.Expr:
        return self.t

    def uniformizer_norm(self) -> DegreeElement:
        return self.group.from_rational(self.t_norm)

    def unit_residue(self, c: LaurentSeries) -> sympy.Expr:
        v = c.valuation
        if v is None:
            raise UsageError("Вычет нуля не определён")
        return c.coefficients[v]

    def lift(self, residue) -> LaurentSeries:
        return self.series({0: residue})

    def random_element(self, rng: random.Random) -> LaurentSeries:
        return self.series({k: self.residue.random_element(rng) for k in range(3)})
