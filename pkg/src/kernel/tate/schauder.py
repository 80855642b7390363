"""
Ортогональные базисы Шаудера пополнения k(T/r)^.

Порядок перебора при r = 1: T^i (0 ≤ i ≤ bound), затем для каждого
унитарного неприводимого P (по степени, затем по кортежу коэффициентов)
и каждого m с deg P · m ≤ bound: T^d/P^m, d = deg P - 1, ..., 0.
Все элементы нормы 1.

Радиус конечного порядка n по модулю |k^×| сводится к r = 1 заменой
U = T^n/π^k (|π^k| = r^n) и даёт T^j·b(U), j < n. Свободный радиус
даёт семейство (T^i), -bound ≤ i ≤ bound.
"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator, List, Sequence, Union

import sympy
from sympy import Poly, Symbol
from sympy.polys.domains import GF, QQ
from sympy.polys.matrices import DomainMatrix

from src.kernel.core.enums import FieldKind
from src.kernel.core.errors import UnsupportedError, UsageError
from src.kernel.degree.groups import DegreeElement, MultRealGroup, Subgroup, order_modulo
from src.kernel.tate.series import _radius_primes
from src.kernel.tate.valued_field import ValuedBaseField

# Логирование
# ====================================================
from src.utils.logger.logger import get_logger
logger = get_logger(__name__)


@dataclass(frozen=True)
class SchauderElement:
    expr: sympy.Expr
    norm: DegreeElement

    def __repr__(self):
        return f"{self.expr} [{self.norm}]"


def _residue_options(field: ValuedBaseField) -> dict:
    return field.residue.context().options()


def monic_irreducibles(field: ValuedBaseField, degree: int, variable: Symbol, height: int) -> Iterator[sympy.Expr]:
    """Унитарные неприводимые над k̃¹ степени degree; над Q: коэффициенты по модулю ≤ height."""
    residue = field.residue
    if residue.kind is FieldKind.PRIME:
        values = range(residue.characteristic)
    elif residue.kind is FieldKind.RATIONAL:
        values = sorted(range(-height, height + 1), key=lambda c: (abs(c), c < 0))
    else:
        raise UnsupportedError(f"Перебор неприводимых над {residue.name} не поддерживается")
    options = _residue_options(field)
    for coefficients in product(values, repeat=degree):
        expr = variable ** degree + sum(c * variable ** (degree - 1 - i) for i, c in enumerate(coefficients))
        if Poly(expr, variable, **options).is_irreducible:
            yield expr


def _unit_basis(field: ValuedBaseField, variable: Symbol, bound: int, one: DegreeElement) -> Iterator[SchauderElement]:
    for i in range(bound + 1):
        yield SchauderElement(variable ** i, one)
    for degree in range(1, bound + 1):
        for P in monic_irreducibles(field, degree, variable, bound):
            for m in range(1, bound // degree + 1):
                for d in range(degree - 1, -1, -1):
                    yield SchauderElement(variable ** d / P ** m, one)


def _uniformizer_power(field: ValuedBaseField, target: DegreeElement, group: MultRealGroup) -> sympy.Expr:
    """π^k с |π^k| = target (target ∈ |k^×|)."""
    base = dict(group.coerce(field.uniformizer_norm()).prime_vector)
    wanted = dict(target.prime_vector)
    p = next(iter(base))
    k = Fraction(wanted.get(p, 0)) / Fraction(base[p])
    if k.denominator != 1:
        raise UsageError(f"{target} не является степенью |π|")
    return field.uniformizer() ** int(k)


def schauder_basis(field: ValuedBaseField, radius: Union[str, DegreeElement], bound: int,
                   symbol: str = "T") -> Iterator[SchauderElement]:
    if bound < 0:
        raise UsageError(f"Граница перебора {bound} должна быть неотрицательной")
    T = Symbol(symbol)
    group = MultRealGroup.over_primes(set(field.group.primes) | set(_radius_primes(radius)))
    r = group.coerce(radius) if isinstance(radius, DegreeElement) else group.parse(str(radius))
    values = Subgroup(group, [group.coerce(g) for g in field.value_group_generators()])
    n = order_modulo(r, values)
    if n is None:
        logger.debug(f"🔍 Базис Шаудера {field.name}, r = {r}: радиус свободен")
        for i in range(-bound, bound + 1):
            yield SchauderElement(T ** i, r ** i)
        return
    if r.is_one():
        yield from _unit_basis(field, T, bound, group.one())
        return
    # r^n ∈ |k^×|: сведение к единичному радиусу по U = T^n/c
    c = _uniformizer_power(field, r ** n, group)
    U = Symbol(f"{symbol}_u")
    logger.debug(f"🔍 Базис Шаудера {field.name}, r = {r}: порядок {n}, U = {T ** n / c}")
    for b in _unit_basis(field, U, bound, group.one()):
        expr = b.expr.subs(U, T ** n / c)
        for j in range(n):
            yield SchauderElement(sympy.simplify(T ** j * expr), r ** j)


def take_basis(field: ValuedBaseField, radius, bound: int, symbol: str = "T") -> List[SchauderElement]:
    elements = list(schauder_basis(field, radius, bound, symbol))
    logger.info(f"📊 Базис Шаудера {field.name}{{{symbol}/{radius}}}: {len(elements)} элементов (граница {bound})")
    return elements


# ====================================================
# Проверки над остаточным полем
# ====================================================
def _residue_domain(field: ValuedBaseField):
    residue = field.residue
    if residue.kind is FieldKind.PRIME:
        return GF(residue.characteristic)
    if residue.kind is FieldKind.RATIONAL:
        return QQ
    raise UnsupportedError(f"Линейная алгебра над {residue.name} не поддерживается")


def residue_rank(field: ValuedBaseField, exprs: Sequence[sympy.Expr], symbol: str = "T") -> int:
    """Ранг семейства рациональных функций от T над k̃¹ (общий знаменатель, затем исключение Гаусса)."""
    if not exprs:
        return 0
    T = Symbol(symbol)
    options = _residue_options(field)
    domain = _residue_domain(field)
    fractions = []
    for expr in exprs:
        num, den = sympy.fraction(sympy.together(sympy.sympify(expr)))
        fractions.append((Poly(num, T, **options), Poly(den, T, **options)))
    common = fractions[0][1]
    for _, den in fractions[1:]:
        common = common.lcm(den)
    numerators = [num * common.exquo(den) for num, den in fractions]
    width = max(p.degree() for p in numerators) + 1
    rows = []
    for p in numerators:
        coefficients = dict(p.terms())
        rows.append([domain.from_sympy(sympy.sympify(coefficients.get((i,), 0))) for i in range(width)])
    return DomainMatrix(rows, (len(rows), width), domain).rank()


def residues_independent(field: ValuedBaseField, elements: Sequence[SchauderElement], symbol: str = "T") -> bool:
    return residue_rank(field, [e.expr for e in elements], symbol) == len(elements)


def in_residue_span(field: ValuedBaseField, elements: Sequence[SchauderElement], target,
                    symbol: str = "T") -> bool:
    exprs = [e.expr for e in elements]
    return residue_rank(field, exprs + [target], symbol) == residue_rank(field, exprs, symbol)
