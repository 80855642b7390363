# Целочисленные решётки векторов показателей
# ====================================================
from fractions import Fraction
from math import lcm
from typing import List, Optional, Sequence

import sympy


def integer_row_basis(rows: Sequence[Sequence[int]]) -> List[List[int]]:
    """
    Ступенчатый Z-базис решётки, порождённой целыми строками.
    Евклидово исключение по столбцам; опорные столбцы строго возрастают.
    """
    work = [list(r) for r in rows if any(r)]
    if not work:
        return []
    ncols = len(work[0])
    basis: List[List[int]] = []
    col = 0
    while work and col < ncols:
        pivots = [r for r in work if r[col] != 0]
        others = [r for r in work if r[col] == 0]
        if not pivots:
            col += 1
            continue
        while len(pivots) > 1:
            pivots.sort(key=lambda r: abs(r[col]))
            head = pivots[0]
            reduced = [head]
            for row in pivots[1:]:
                q = row[col] // head[col]
                rest = [a - q * b for a, b in zip(row, head)]
                if rest[col] != 0:
                    reduced.append(rest)
                elif any(rest):
                    others.append(rest)
            pivots = reduced
        basis.append(pivots[0])
        work = [r for r in others if any(r)]
        col += 1
    return basis


def solve_in_basis(basis: Sequence[Sequence[int]], vector: Sequence[Fraction]) -> Optional[List[Fraction]]:
    """Рациональные координаты vector в ступенчатом базисе или None, если vector вне Q-оболочки."""
    rest = [Fraction(x) for x in vector]
    coords: List[Fraction] = []
    for row in basis:
        pivot = next(i for i, a in enumerate(row) if a != 0)
        c = rest[pivot] / row[pivot]
        coords.append(c)
        if c:
            rest = [x - c * a for x, a in zip(rest, row)]
    if any(rest):
        return None
    return coords


def scale_to_integers(vectors: Sequence[Sequence[Fraction]]) -> List[List[int]]:
    """Умножает все векторы на общий знаменатель (решётка масштабируется целиком)."""
    denominators = [Fraction(x).denominator for v in vectors for x in v]
    common = lcm(*denominators) if denominators else 1
    return [[int(Fraction(x) * common) for x in v] for v in vectors]


def rational_rank(vectors: Sequence[Sequence[Fraction]]) -> int:
    if not vectors or not vectors[0]:
        return 0
    matrix = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in v] for v in vectors])
    return matrix.rank()
