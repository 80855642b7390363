"""
Расширение скаляров до пополнения k(T'/r') с нормой Гаусса.

Элементы поля хранятся несократимыми дробями p/q многочленов от T' над k
(Q или F_p с тривиальной нормой, либо Q_p); |p/q| = ‖p‖/‖q‖,
‖Σ c_i·T'^i‖ = max |c_i|·r'^i.

Остаточное поле:
  - r' вне |k^×|^Q: k̃ с сечениями τ и T'~ степени r';
  - r' ∈ |k^×|: k̃(T'~), T'~: вычет T'/λ, |λ| = r';
  - иначе (конечный порядок > 1) расширение не поддерживается.
"""
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple, Union

import sympy
from sympy import Poly, Symbol

from src.kernel.core.enums import FieldKind, ValuedFieldKind, Verdict
from src.kernel.core.errors import UnsupportedError, UsageError
from src.kernel.core.settings import KernelSettings
from src.kernel.corpoid.base_field import BaseField
from src.kernel.corpoid.corpoid import Corpoid
from src.kernel.degree.groups import DegreeElement, MultRealGroup, Subgroup, order_modulo
from src.kernel.tate.presentation import TatePresentation, is_strongly_generating
from src.kernel.tate.series import TateRing, TateSeries, _radius_primes
from src.kernel.tate.valued_field import ValuedBaseField

# Логирование
# ====================================================
from src.utils.logger.logger import get_logger
logger = get_logger(__name__)


@dataclass(frozen=True)
class GaussFraction:
    numerator: Poly
    denominator: Poly

    def __repr__(self):
        if self.denominator.is_one:
            return str(self.numerator.as_expr())
        return f"({self.numerator.as_expr()})/({self.denominator.as_expr()})"


class GaussValuedField(ValuedBaseField):
    def __init__(self, base: ValuedBaseField, symbol: str, radius: Union[str, DegreeElement]):
        if base.kind is ValuedFieldKind.LAURENT:
            raise UnsupportedError("Расширение Гаусса над рядами Лорана не поддерживается")
        if base.residue.kind not in (FieldKind.RATIONAL, FieldKind.PRIME):
            raise UnsupportedError(f"Расширение Гаусса над {base.name} не поддерживается")
        self.base = base
        self.kind = base.kind
        self.variable = Symbol(symbol)
        if self.variable in base.symbols:
            raise UsageError(f"Символ {symbol} уже используется в {base.name}")
        group = MultRealGroup.over_primes(set(base.group.primes) | set(_radius_primes(radius)))
        r = group.coerce(radius) if isinstance(radius, DegreeElement) else group.parse(str(radius))
        self.radius = r
        # Q_p: коэффициенты рациональны, вычеты в F_p
        self.options = {"domain": "QQ"} if base.kind is ValuedFieldKind.PADIC else base.residue.context().options()
        values = Subgroup(group, [group.coerce(g) for g in base.value_group_generators()])
        self.order = order_modulo(r, values)
        self.residue_symbol = Symbol(f"{symbol}~")
        super().__init__(f"{base.name}({symbol}/{r})^", self._residue_field(base), group)
        self.gamma = Subgroup(group, [group.coerce(g) for g in base.gamma.generators])

    def _residue_field(self, base: ValuedBaseField) -> BaseField:
        if self.order is None:
            return base.residue
        if self.order == 1:
            return BaseField.function_field(base.residue, [str(self.residue_symbol)])
        raise UnsupportedError(
            f"Радиус {self.radius} имеет порядок {self.order} по модулю |k^×|: остаточное поле не поддерживается"
        )

    @property
    def symbols(self):
        return self.base.symbols + (self.variable,)

    # ------------------------
    # Элементы
    # ------------------------
    def _poly(self, expr) -> Poly:
        return Poly(expr, self.variable, **self.options)

    def make(self, numerator: Poly, denominator: Poly) -> GaussFraction:
        if denominator.is_zero:
            raise UsageError(f"Деление на ноль в {self.name}")
        if numerator.is_zero:
            return GaussFraction(self._poly(0), self._poly(1))
        g = numerator.gcd(denominator)
        numerator, denominator = numerator.exquo(g), denominator.exquo(g)
        lc = denominator.LC()
        return GaussFraction(numerator.quo_ground(lc), denominator.quo_ground(lc))

    def from_expr(self, expr) -> GaussFraction:
        if isinstance(expr, GaussFraction):
            return expr
        expr = sympy.sympify(expr)
        extra = expr.free_symbols - {self.variable}
        if extra:
            raise UsageError(f"Коэффициент {expr} содержит символы вне {self.name}: {sorted(map(str, extra))}")
        num, den = sympy.fraction(sympy.together(expr))
        return self.make(self._poly(num), self._poly(den))

    def to_expr(self, c: GaussFraction) -> sympy.Expr:
        return c.numerator.as_expr() / c.denominator.as_expr()

    def generator(self) -> GaussFraction:
        return self.from_expr(self.variable)

    def add(self, a: GaussFraction, b: GaussFraction) -> GaussFraction:
        return self.make(a.numerator * b.denominator + b.numerator * a.denominator, a.denominator * b.denominator)

    def mul(self, a: GaussFraction, b: GaussFraction) -> GaussFraction:
        return self.make(a.numerator * b.numerator, a.denominator * b.denominator)

    def neg(self, a: GaussFraction) -> GaussFraction:
        return GaussFraction(-a.numerator, a.denominator)

    def inverse(self, a: GaussFraction) -> GaussFraction:
        if a.numerator.is_zero:
            raise UsageError(f"Обращение нуля в {self.name}")
        return self.make(a.denominator, a.numerator)

    def is_zero(self, a: GaussFraction) -> bool:
        return a.numerator.is_zero

    # ------------------------
    # Норма
    # ------------------------
    def _weighted_terms(self, p: Poly):
        for (i,), c in p.terms():
            value = self.base.norm(c)
            if value is not None:
                yield i, c, self.group.coerce(value) * self.radius ** i

    def polynomial_norm(self, p: Poly) -> Optional[DegreeElement]:
        values = [v for _, _, v in self._weighted_terms(p)]
        return max(values) if values else None

    def norm(self, c: GaussFraction) -> Optional[DegreeElement]:
        top = self.polynomial_norm(c.numerator)
        if top is None:
            return None
        return top / self.polynomial_norm(c.denominator)

    def uniformizer_norm(self) -> Optional[DegreeElement]:
        value = self.base.uniformizer_norm()
        return None if value is None else self.group.coerce(value)

    def value_group_generators(self):
        generators = [self.group.coerce(g) for g in self.base.value_group_generators()]
        if self.order is None:
            generators.append(self.radius)
        return generators

    # ------------------------
    # Вычеты
    # ------------------------
    def residue_corpoid(self, group: MultRealGroup) -> Corpoid:
        sections = []
        value = self.uniformizer_norm()
        if value is not None:
            sections.append(("τ", group.coerce(value)))
        if self.order is None:
            sections.append((str(self.residue_symbol), group.coerce(self.radius)))
        return Corpoid(self.residue, group, sections)

    def _scaling(self) -> sympy.Expr:
        """λ ∈ k с |λ| = r' (только при r' ∈ |k^×|)."""
        if self.base.kind is not ValuedFieldKind.PADIC:
            return sympy.Integer(1)
        p = self.base.p
        exponent = dict(self.radius.prime_vector).get(p, Fraction(0))
        return sympy.Integer(p) ** int(-exponent)

    def _polynomial_residue(self, p: Poly) -> sympy.Expr:
        top = self.polynomial_norm(p)
        terms = [(i, c) for i, c, v in self._weighted_terms(p) if v == top]
        if self.order is None:
            # при свободном r' максимум достигается ровно одним членом
            _, c = terms[0]
            return self.base.unit_residue(c)
        lam = self._scaling()
        return sympy.Add(*[self.base.unit_residue(c * lam ** i) * self.residue_symbol ** i for i, c in terms])

    def unit_residue(self, c: GaussFraction) -> sympy.Expr:
        return self.residue.normalize(
            self._polynomial_residue(c.numerator) / self._polynomial_residue(c.denominator)
        )

    def lift(self, residue) -> GaussFraction:
        expr = sympy.sympify(residue)
        if self.order is not None:
            expr = expr.subs(self.residue_symbol, self.variable / self._scaling())
        return self.from_expr(expr)

    def random_element(self, rng: random.Random) -> GaussFraction:
        step = self.variable / self._scaling() if self.order is not None else sympy.Integer(1)
        return self.from_expr(self.base.random_element(rng) + self.base.random_element(rng) * step)


# ====================================================
# Расширение рядов и представлений
# ====================================================
def extend_ring(ring: TateRing, symbol: str, radius) -> TateRing:
    field = GaussValuedField(ring.field, symbol, radius)
    return TateRing(field, list(zip(map(str, ring.symbols), ring.radii)), ring.eps_text)


def extend_series(f: TateSeries, target: TateRing) -> TateSeries:
    source = f.ring.field
    return TateSeries(
        target,
        {e: target.field.from_expr(source.to_expr(c)) for e, c in f.terms.items()},
        f.exact,
    )


def extend_scalars_gauss(
    source: Union[TatePresentation, TateSeries], symbol: str, radius
) -> Union[TatePresentation, TateSeries]:
    """Образ ряда или представления над k(T'/r')^; нормы сохраняются."""
    target = extend_ring(source.ring, symbol, radius)
    if isinstance(source, TateSeries):
        return extend_series(source, target)
    extended = TatePresentation(target, [extend_series(a, target) for a in source.relators], f"{source.name}_{symbol}")
    logger.debug(f"🔍 Расширение скаляров {source.name} -> {extended.describe()}")
    return extended


def is_strongly_admissible(
    presentation: TatePresentation,
    radii: Sequence[Tuple[str, object]],
    settings: Optional[KernelSettings] = None,
) -> Verdict:
    """Сильная порождаемость до и после каждого расширения k(T'/r')^."""
    verdicts = [is_strongly_generating(presentation, settings=settings)]
    for symbol, radius in radii:
        extended = extend_scalars_gauss(presentation, symbol, radius)
        verdicts.append(is_strongly_generating(extended, settings=settings))
    verdict = Verdict.combine(verdicts)
    logger.info(f"🔍 {presentation.name}: сильная допустимость = {verdict.value}")
    return verdict
