"""
Сведение градуированных вычислений к обычным кольцам многочленов.

ArithmeticTranslation: сечения корпоида становятся обращёнными параметрами:
однородный идеал I ⊂ F¹[t^±][T] изучается как I·F¹(t)[T] (приведённость,
минимальные простые, размерность). Однородные простые не содержат ненулевых
многочленов от одних сечений, поэтому при этом ничего не теряется.

LaurentTranslation (to_degree_one): степени кодируются мономами Лорана
U^c / V^c по Z-базису решётки степеней; у однородного многочлена все члены
несут общий моном, после его снятия остаётся многочлен над F¹ без сечений
(W = 1). Снятый вид используется для геометрических вопросов, to_degree_one
возвращает полный образ; untranslate обращает его.
"""
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import sympy
from sympy import Symbol

from src.kernel.algebra.context import AlgebraContext, LocalizedIdeal
from src.kernel.core.errors import UsageError
from src.kernel.corpoid.polynomial import GradedPolynomial, GradedPolynomialRing
from src.kernel.degree.groups import DegreeElement, Subgroup


def clear_sections(expr, sections: Sequence[Symbol]) -> sympy.Expr:
    """Числитель выражения, умноженный на моном сечений, снимающий отрицательные показатели."""
    num, _ = sympy.fraction(sympy.together(sympy.sympify(expr)))
    num = sympy.expand(num)
    if num == 0 or not sections:
        return num
    shift = []
    for t in sections:
        lowest = 0
        for term in sympy.Add.make_args(num):
            for factor in sympy.Mul.make_args(term):
                base, ex = factor.as_base_exp()
                if base == t and ex < lowest:
                    lowest = ex
        shift.append(-lowest)
    return sympy.expand(num * sympy.Mul(*[t ** k for t, k in zip(sections, shift)]))


class ArithmeticTranslation:
    def __init__(self, ring: GradedPolynomialRing):
        self.ring = ring
        base = ring.corpoid.base
        inner = base.context(ring.symbols)
        self.context = AlgebraContext(
            base.characteristic, inner.variables, tuple(ring.corpoid.section_symbols) + base.parameters
        )

    def relations(self) -> List[sympy.Expr]:
        return list(self.ring.corpoid.base.relations) + self.ring.relations()

    def expr(self, p: GradedPolynomial) -> sympy.Expr:
        return clear_sections(p.to_expr(), self.ring.corpoid.section_symbols)

    def ideal(self, polys: Sequence[GradedPolynomial], extra: Sequence = ()) -> LocalizedIdeal:
        return LocalizedIdeal(self.context, [self.expr(p) for p in polys] + list(extra) + self.relations())

    def back(self, exprs: Sequence) -> List[GradedPolynomial]:
        """Однородные образующие кольца по элементам базиса (нулевые в F¹ отбрасываются)."""
        result = []
        for e in exprs:
            p = self.ring.from_expr(e)
            if not p.is_zero:
                result.append(p)
        return result


@dataclass(frozen=True)
class LaurentImage:
    full: sympy.Expr            # каждый член с мономом Лорана своей степени
    unit: sympy.Expr            # общий моном U^c(d)
    stripped: sympy.Expr        # многочлен над F¹ после снятия общего монома
    degree: DegreeElement


class LaurentTranslation:
    def __init__(self, ring: GradedPolynomialRing, prefix: str = "U"):
        self.ring = ring
        corpoid = ring.corpoid
        self.lattice = Subgroup(corpoid.group, list(corpoid.section_degrees) + list(ring.degrees))
        self.basis: List[DegreeElement] = [d for d in self.lattice.basis_elements() if not d.is_one()]
        count = len(self.basis)
        names = [prefix] if count == 1 else [f"{prefix}{i + 1}" for i in range(count)]
        self.units: Tuple[Symbol, ...] = tuple(Symbol(n) for n in names)
        self.inverses: Tuple[Symbol, ...] = tuple(Symbol(f"V{n[len(prefix):]}") for n in names)
        base = corpoid.base
        self.context = base.context(ring.symbols)

    # ------------------------
    # Словарь степеней
    # ------------------------
    def coordinates(self, degree: DegreeElement) -> Tuple[int, ...]:
        coords = self.lattice.coordinates(degree)
        if coords is None or any(c.denominator != 1 for c in coords):
            raise UsageError(f"Степень {degree} вне решётки степеней кольца")
        return tuple(int(c) for c in coords)

    def marker(self, degree: DegreeElement) -> sympy.Expr:
        """U^c / V^c: моном Лорана, отмечающий степень."""
        factors = []
        for u, v, c in zip(self.units, self.inverses, self.coordinates(degree)):
            factors.append(u ** c if c >= 0 else v ** (-c))
        return sympy.Mul(*factors)

    def dictionary(self) -> Dict[str, str]:
        entries = {}
        for t, d in zip(self.ring.corpoid.section_symbols, self.ring.corpoid.section_degrees):
            entries[str(t)] = str(self.marker(d))
        for s, d in zip(self.ring.symbols, self.ring.degrees):
            entries[str(s)] = f"{s}*{self.marker(d)}"
        return entries

    # ------------------------
    # Перевод и обратный перевод
    # ------------------------
    def translate(self, p: GradedPolynomial) -> LaurentImage:
        full = sympy.Integer(0)
        stripped = sympy.Integer(0)
        for exps, c in p.terms.items():
            monomial = sympy.Mul(*[s ** e for s, e in zip(self.ring.symbols, exps)])
            full += c.coefficient * monomial * self.marker(c.degree * self.ring.monomial_degree(exps))
            stripped += c.coefficient * monomial
        unit = self.marker(p.degree) if not p.is_zero else sympy.Integer(1)
        return LaurentImage(sympy.expand(full), unit, sympy.expand(stripped), p.degree)

    def untranslate(self, image, degree: DegreeElement) -> GradedPolynomial:
        """Однородный многочлен степени degree по образу full = U^c(degree)·stripped."""
        ring = self.ring
        corpoid = ring.corpoid
        stripped = sympy.expand(sympy.cancel(sympy.sympify(image) / self.marker(degree)))
        markers = stripped.free_symbols & (set(self.units) | set(self.inverses))
        if markers:
            raise UsageError(f"{image} не является образом многочлена степени {degree}")
        if stripped == 0:
            return ring.zero(degree)
        poly = sympy.Poly(stripped, *ring.symbols, domain="EX") if ring.symbols else None
        pairs = poly.terms() if poly is not None else [((), stripped)]
        terms = {}
        for exps, coeff in pairs:
            section_degree = degree / ring.monomial_degree(exps)
            terms[tuple(exps)] = corpoid.element(sympy.sympify(coeff), section_degree)
        return GradedPolynomial(ring, terms, degree)

    def ideal(self, polys: Sequence[GradedPolynomial], extra: Sequence = ()) -> LocalizedIdeal:
        relations = list(self.ring.corpoid.base.relations) + self.ring.relations()
        exprs = [clear_sections(self.translate(p).stripped, ()) for p in polys]
        return LocalizedIdeal(self.context, exprs + list(extra) + relations)


def to_degree_one(p: GradedPolynomial) -> Tuple[sympy.Expr, LaurentTranslation]:
    """Образ full и словарь степеней: T степени 2 переходит в T·U."""
    translation = LaurentTranslation(p.ring)
    return translation.translate(p).full, translation
