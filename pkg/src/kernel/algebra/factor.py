"""
Разложение многочленов на неприводимые множители над простым полем (Q или F_p).

Над Q используется sympy.factor_list. Над F_p sympy раскладывает только
многочлены от одной переменной, поэтому многомерный случай сводится к
одномерному подстановкой Кронекера x_i -> z^(B^i) с перебором комбинаций
одномерных множителей (ограничен FACTOR_COMBINATION_CAP).
"""
from itertools import product
from typing import List, Sequence, Tuple

import sympy
from sympy import Dummy, Poly

from src.kernel.core.errors import InconclusiveError

# Логирование
# ====================================================
from src.utils.logger.logger import get_logger
logger = get_logger(__name__)

Factor = Tuple[sympy.Expr, int]


def _poly(expr, gens, characteristic: int) -> Poly:
    if characteristic:
        return Poly(expr, *gens, modulus=characteristic)
    return Poly(expr, *gens, domain="QQ")


def _is_constant(poly: Poly) -> bool:
    return all(d <= 0 for d in poly.degree_list())


def factor_polynomial(expr, gens: Sequence[sympy.Symbol], characteristic: int, cap: int = 4096) -> List[Factor]:
    """
    Неприводимые множители expr в P[gens] с кратностями (константы отброшены).
    Множители нормированы (monic) для детерминированного порядка.
    """
    expr = sympy.expand(expr)
    if expr == 0:
        return []
    present = [g for g in gens if expr.has(g)]
    if not present:
        return []
    poly = _poly(expr, present, characteristic)
    if characteristic == 0 or len(present) == 1:
        _, pairs = poly.factor_list()
        factors = [(f.monic().as_expr(), int(m)) for f, m in pairs if not _is_constant(f)]
    else:
        factors = [(f.as_expr(), m) for f, m in _factor_multivariate_gf(poly, cap)]
    factors.sort(key=lambda fm: (sympy.default_sort_key(fm[0]), fm[1]))
    return factors


# ====================================================
# Многомерный случай над F_p
# ====================================================
def _factor_multivariate_gf(poly: Poly, cap: int) -> List[Tuple[Poly, int]]:
    result: List[Tuple[Poly, int]] = []
    gens = poly.gens

    # мономиальный множитель x_i^k выделяется сразу
    mins = [min(m[i] for m in poly.monoms()) for i in range(len(gens))]
    if any(mins):
        for i, k in enumerate(mins):
            if k:
                result.append((Poly(gens[i], *gens, modulus=poly.get_modulus()), k))
        shift = tuple(mins)
        poly = Poly.from_dict(
            {tuple(a - b for a, b in zip(m, shift)): c for m, c in poly.terms()},
            *gens, modulus=poly.get_modulus()
        )

    rest = poly
    while not _is_constant(rest):
        divisor = _smallest_divisor(rest, cap)
        if divisor is None:
            result.append((rest.monic(), 1))
            break
        divisor = divisor.monic()
        mult = 0
        while True:
            q, r = rest.div(divisor)
            if not r.is_zero:
                break
            rest = q
            mult += 1
        result.append((divisor, mult))
    return result


def _kronecker_image(poly: Poly, base: int, z) -> Poly:
    terms = {}
    for monom, coeff in poly.terms():
        k = sum(e * base ** i for i, e in enumerate(monom))
        terms[(k,)] = terms.get((k,), 0) + coeff
    return Poly.from_dict(terms, z, modulus=poly.get_modulus())


def _kronecker_inverse(image: Poly, base: int, gens, modulus: int) -> Poly:
    terms = {}
    for (k,), coeff in image.terms():
        digits = []
        for _ in gens:
            k, d = divmod(k, base)
            digits.append(d)
        if k:
            return None
        terms[tuple(digits)] = coeff
    return Poly.from_dict(terms, *gens, modulus=modulus)


def _smallest_divisor(poly: Poly, cap: int):
    """
    Нетривиальный делитель минимальной степени образа Кронекера (он неприводим)
    или None, если poly неприводим.
    """
    gens = poly.gens
    modulus = poly.get_modulus()
    base = max(poly.degree_list()) + 1
    z = Dummy("z")
    image = _kronecker_image(poly, base, z)
    _, pairs = image.factor_list()
    if len(pairs) == 1 and pairs[0][1] == 1:
        return None

    half = image.degree() // 2
    degrees = [f.degree() for f, _ in pairs]
    ranges = [range(m + 1) for _, m in pairs]
    candidates = []
    for exps in product(*ranges):
        total = sum(e * d for e, d in zip(exps, degrees))
        if 0 < total <= half:
            candidates.append((total, exps))
            if len(candidates) > cap:
                raise InconclusiveError(
                    f"Перебор комбинаций множителей превысил предел {cap} (степень образа {image.degree()})"
                )
    candidates.sort()
    logger.debug(f"🔍 Кронекер: образ степени {image.degree()}, кандидатов {len(candidates)}")

    for _, exps in candidates:
        cand = Poly(1, z, modulus=modulus)
        for (f, _), e in zip(pairs, exps):
            if e:
                cand = cand * f ** e
        lifted = _kronecker_inverse(cand, base, gens, modulus)
        if lifted is None or _is_constant(lifted):
            continue
        _, r = poly.div(lifted)
        if r.is_zero:
            return lifted
    return None
