"""
Поля коэффициентов F¹ настольного масштаба.

Элемент поля: выражение sympy в алгебраических символах (F_q, простые расширения)
или в параметрах (поля рациональных функций). Канонический вид:
  - алгебраический случай: остаток по модулю соотношений, коэффициенты в 0..p-1;
  - функциональный случай: несократимая дробь с нормированным знаменателем.
"""
import itertools
import random
from typing import Iterator, List, Optional, Sequence, Tuple

import sympy
from sympy import Dummy, Poly, Symbol

from src.kernel.algebra.context import AlgebraContext, LocalizedIdeal, standard_monomial_count
from src.kernel.core.enums import FieldKind
from src.kernel.core.errors import UnsupportedError, UsageError

# Логирование
# ====================================================
from src.utils.logger.logger import get_logger
logger = get_logger(__name__)


class BaseField:
    """Q, F_p, F_q = F_p[a]/(m), простое расширение одним неприводимым многочленом или P(s1..sk)."""

    def __init__(
        self,
        kind: FieldKind,
        characteristic: int,
        name: str,
        algebraic: Sequence[Symbol] = (),
        relations: Sequence[sympy.Expr] = (),
        parameters: Sequence[Symbol] = (),
    ):
        self.kind = kind
        self.characteristic = characteristic
        self.name = name
        self.algebraic: Tuple[Symbol, ...] = tuple(algebraic)
        self.relations: Tuple[sympy.Expr, ...] = tuple(relations)
        self.parameters: Tuple[Symbol, ...] = tuple(parameters)
        self._relation_basis = None
        self._degree: Optional[int] = None

    # ==========================
    # Factory methods
    # ==========================
    @classmethod
    def rational(cls) -> "BaseField":
        return cls(FieldKind.RATIONAL, 0, "Q")

    @classmethod
    def prime(cls, p: int) -> "BaseField":
        if not sympy.isprime(p):
            raise UsageError(f"GF({p}): {p} не является простым числом")
        return cls(FieldKind.PRIME, int(p), f"GF({p})")

    @classmethod
    def finite(cls, q: int, symbol: str = "a") -> "BaseField":
        """F_q; при q = p^e (e > 1) берётся лексикографически первый нормированный неприводимый многочлен."""
        factors = sympy.factorint(q)
        if len(factors) != 1:
            raise UsageError(f"GF({q}): порядок конечного поля должен быть степенью простого")
        (p, e), = factors.items()
        p, e = int(p), int(e)
        if e == 1:
            return cls.prime(p)
        a = Symbol(symbol)
        modulus = first_irreducible(p, e, a)
        logger.debug(f"🔍 GF({q}) = GF({p})[{a}]/({modulus})")
        return cls(FieldKind.FINITE, p, f"GF({q})", algebraic=(a,), relations=(modulus,))

    @classmethod
    def extension(cls, base: "BaseField", polynomial, symbol: Symbol) -> "BaseField":
        """base[symbol]/(polynomial); неприводимость проверяется при построении."""
        if base.parameters:
            raise UnsupportedError("Алгебраические расширения полей функций не поддерживаются")
        if symbol in base.algebraic:
            raise UsageError(f"Символ {symbol} уже используется в {base}")
        poly = base.context((symbol,)).normalize(polynomial)
        field = cls(
            FieldKind.EXTENSION,
            base.characteristic,
            f"{base.name}[{symbol}]/({poly})",
            algebraic=(symbol,) + base.algebraic,
            relations=(poly,) + base.relations,
        )
        if not field._is_field():
            raise UsageError(f"Многочлен {poly} приводим над {base.name}")
        return field

    @classmethod
    def function_field(cls, base: "BaseField", names: Sequence[str]) -> "BaseField":
        if base.kind not in (FieldKind.RATIONAL, FieldKind.PRIME):
            raise UnsupportedError("Поля функций строятся только над Q или GF(p)")
        params = tuple(Symbol(n) for n in names)
        return cls(
            FieldKind.FUNCTION,
            base.characteristic,
            f"{base.name}({', '.join(names)})",
            parameters=params,
        )

    # ------------------------
    # Структура
    # ------------------------
    @property
    def symbols(self) -> Tuple[Symbol, ...]:
        return self.algebraic + self.parameters

    @property
    def is_perfect(self) -> bool:
        return self.characteristic == 0 or not self.parameters

    @property
    def is_finite(self) -> bool:
        return self.characteristic > 0 and not self.parameters

    def context(self, variables: Sequence[Symbol] = ()) -> AlgebraContext:
        """Переменные кольца, затем алгебраические символы поля; параметры поля обращены."""
        return AlgebraContext(self.characteristic, tuple(variables) + self.algebraic, self.parameters)

    @property
    def degree(self) -> int:
        """Степень над простым полем (над полем функций простого поля)."""
        if self._degree is None:
            if not self.algebraic:
                self._degree = 1
            else:
                self._degree = standard_monomial_count(LocalizedIdeal(self.context(), self.relations))
        return self._degree

    @property
    def order(self) -> Optional[int]:
        if not self.is_finite:
            return None
        return self.characteristic ** self.degree

    def _is_field(self) -> bool:
        from src.kernel.algebra.primes import is_radical, minimal_primes
        ideal = LocalizedIdeal(self.context(), self.relations)
        return len(minimal_primes(ideal)) == 1 and is_radical(ideal)

    # ------------------------
    # Арифметика элементов
    # ------------------------
    def _relations_basis(self):
        if self._relation_basis is None:
            ctx = self.context()
            self._relation_basis = ctx.groebner(self.relations) if self.relations else []
        return self._relation_basis

    def check_symbols(self, expr) -> sympy.Expr:
        expr = sympy.sympify(expr)
        extra = expr.free_symbols - set(self.symbols)
        if extra:
            raise UsageError(f"Элемент {expr} содержит символы вне поля {self.name}: {sorted(map(str, extra))}")
        return expr

    def normalize(self, expr) -> sympy.Expr:
        expr = sympy.sympify(expr)
        ctx = self.context()
        if self.parameters:
            return self._normalize_fraction(expr)
        expr = ctx.normalize(expr)
        if not self.algebraic or expr == 0:
            return expr
        _, remainder = sympy.reduced(expr, self._relations_basis(), *ctx.gens, order="lex", **ctx.options())
        return ctx.normalize(remainder)

    def _normalize_fraction(self, expr) -> sympy.Expr:
        ctx = self.context()
        num, den = sympy.fraction(sympy.together(expr))
        num, den = ctx.normalize(num), ctx.normalize(den)
        if den == 0:
            raise UsageError(f"Деление на ноль в поле {self.name}")
        if num == 0:
            return sympy.Integer(0)
        pn = Poly(num, *self.parameters, **ctx.options())
        pd = Poly(den, *self.parameters, **ctx.options())
        pn, pd = pn.cancel(pd, include=True)
        lc = pd.LC()
        pn, pd = pn.exquo_ground(lc), pd.exquo_ground(lc)
        num, den = ctx.normalize(pn.as_expr()), ctx.normalize(pd.as_expr())
        return num if den == 1 else num / den

    def add(self, a, b) -> sympy.Expr:
        return self.normalize(a + b)

    def sub(self, a, b) -> sympy.Expr:
        return self.normalize(a - b)

    def mul(self, a, b) -> sympy.Expr:
        return self.normalize(a * b)

    def neg(self, a) -> sympy.Expr:
        return self.normalize(-a)

    def is_zero(self, a) -> bool:
        return self.normalize(a) == 0

    def equal(self, a, b) -> bool:
        return self.is_zero(a - b)

    def inverse(self, a) -> sympy.Expr:
        a = self.normalize(a)
        if a == 0:
            raise UsageError(f"Обращение нуля в поле {self.name}")
        if not self.algebraic:
            return self.normalize(1 / a)
        ctx = self.context()
        y = Dummy("y")
        basis = ctx.groebner([y * a - 1] + list(self.relations), y)
        for g in basis:
            if Poly(g, y).degree() == 1:
                return self.normalize(y - g)
        raise UsageError(f"Элемент {a} необратим в {self.name}")

    def div(self, a, b) -> sympy.Expr:
        return self.mul(a, self.inverse(b))

    def power(self, a, k: int) -> sympy.Expr:
        if k < 0:
            return self.power(self.inverse(a), -k)
        return self.normalize(a ** k)

    # ------------------------
    # Перечисление и случайные элементы
    # ------------------------
    def elements(self) -> Iterator[sympy.Expr]:
        """Все элементы конечного поля в детерминированном порядке."""
        if not self.is_finite:
            raise UnsupportedError(f"Поле {self.name} бесконечно")
        p = self.characteristic
        if not self.algebraic:
            for c in range(p):
                yield sympy.Integer(c)
            return
        basis = self.monomial_basis()
        for coeffs in itertools.product(range(p), repeat=len(basis)):
            yield self.normalize(sum(c * m for c, m in zip(coeffs, basis)))

    def monomial_basis(self) -> List[sympy.Expr]:
        """Стандартные мономы алгебраических символов (базис над простым полем)."""
        if not self.algebraic:
            return [sympy.Integer(1)]
        ctx = self.context()
        basis = self._relations_basis()
        leading = [ctx.poly(g).monoms()[0] for g in basis]
        monomials = []
        bounds = [max(m[i] for m in leading) + 1 for i in range(len(self.algebraic))]
        for exps in itertools.product(*[range(b) for b in bounds]):
            if not any(all(a >= b for a, b in zip(exps, lm)) for lm in leading):
                monomials.append(sympy.Mul(*[s ** e for s, e in zip(self.algebraic, exps)]))
        return monomials

    def random_element(self, rng: random.Random, nonzero: bool = False) -> sympy.Expr:
        while True:
            if self.characteristic:
                top = self.characteristic - 1
                coeff = lambda: rng.randint(0, top)
            else:
                coeff = lambda: sympy.Rational(rng.randint(-6, 6), rng.randint(1, 3))
            value = sum(coeff() * m for m in self.monomial_basis())
            for s in self.parameters:
                value += coeff() * s
            value = self.normalize(value)
            if not nonzero or value != 0:
                return value

    def __eq__(self, other):
        return (
            isinstance(other, BaseField)
            and self.characteristic == other.characteristic
            and self.algebraic == other.algebraic
            and self.relations == other.relations
            and self.parameters == other.parameters
        )

    def __hash__(self):
        return hash((self.characteristic, self.algebraic, self.relations, self.parameters))

    def __repr__(self):
        return self.name


# ====================================================
# Вспомогательные функции
# ====================================================
def first_irreducible(p: int, degree: int, symbol: Symbol) -> sympy.Expr:
    """Лексикографически первый нормированный неприводимый многочлен степени degree над F_p."""
    for tail in itertools.product(range(p), repeat=degree):
        expr = symbol ** degree + sum(c * symbol ** i for i, c in enumerate(reversed(tail)))
        if Poly(expr, symbol, modulus=p).is_irreducible:
            return sympy.expand(expr)
    raise UsageError(f"Нет неприводимого многочлена степени {degree} над GF({p})")


def perfection_tower(field: BaseField, prefix: str = "σ") -> List[Tuple[Symbol, sympy.Expr]]:
    """
    Один уровень корней p-й степени из параметров: пары (σ_i, σ_i^p - s_i).
    Для F = F_p(s) поле F(σ) совпадает с F^{1/p}, чего достаточно для критерия Маклейна.
    """
    if field.is_perfect:
        return []
    p = field.characteristic
    return [(Symbol(f"{prefix}_{s}"), Symbol(f"{prefix}_{s}") ** p - s) for s in field.parameters]
