"""
Упорядоченные группы значений конечного ранга.

RealValueGroup: подгруппа R_{>0}^× (ранг 1) с вещественным порядком.
LexValueGroup(h): Q^h с лексикографическим порядком в мультипликативной записи:
значение ε^e, где ε_1 ≪ ε_2 ≪ ... ≪ 1, поэтому |t_1| < |t_2| < 1.
Нулевое значение |0| везде представлено через None.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple, Union

from src.kernel.core.enums import Ordering
from src.kernel.core.errors import UsageError
from src.kernel.degree.groups import DegreeElement, MultRealGroup, Subgroup, compare, order_modulo
from src.kernel.degree.lattice import rational_rank


@dataclass(frozen=True)
class LexValue:
    height: int
    coords: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coords) != self.height:
            raise UsageError(f"Ожидалось {self.height} координат, получено {len(self.coords)}")

    def _check(self, other: "LexValue"):
        if not isinstance(other, LexValue) or other.height != self.height:
            raise UsageError(f"Значения разных групп: Q^{self.height} и {other}")

    def __mul__(self, other: "LexValue") -> "LexValue":
        self._check(other)
        return LexValue(self.height, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __truediv__(self, other: "LexValue") -> "LexValue":
        self._check(other)
        return LexValue(self.height, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __pow__(self, k) -> "LexValue":
        k = Fraction(k)
        return LexValue(self.height, tuple(a * k for a in self.coords))

    def is_one(self) -> bool:
        return not any(self.coords)

    def compare(self, other: "LexValue") -> Ordering:
        self._check(other)
        for a, b in zip(self.coords, other.coords):
            if a != b:
                # больший показатель при бесконечно малом ε_i означает меньшее значение
                return Ordering.LESS if a > b else Ordering.GREATER
        return Ordering.EQUAL

    def __lt__(self, other):
        return self.compare(other) is Ordering.LESS

    def __le__(self, other):
        return self.compare(other) is not Ordering.GREATER

    def __gt__(self, other):
        return self.compare(other) is Ordering.GREATER

    def __ge__(self, other):
        return self.compare(other) is not Ordering.LESS

    def __str__(self):
        if self.is_one():
            return "1"
        return "ε^(" + ", ".join(str(c) for c in self.coords) + ")"


Value = Union[DegreeElement, LexValue]


class LexValueGroup:
    """Q^h, лексикографический порядок; выпуклые подгруппы: суффиксы {0}^j × Q^(h-j)."""

    def __init__(self, height: int):
        if height < 0:
            raise UsageError(f"Высота должна быть неотрицательной: {height}")
        self.height = height

    def one(self) -> LexValue:
        return LexValue(self.height, tuple(Fraction(0) for _ in range(self.height)))

    def value(self, coords: Sequence) -> LexValue:
        return LexValue(self.height, tuple(Fraction(c) for c in coords))

    def uniformizer(self, index: int) -> LexValue:
        """|t_{index+1}| = ε_{index+1}."""
        coords = [Fraction(0)] * self.height
        coords[index] = Fraction(1)
        return LexValue(self.height, tuple(coords))

    def convex_subgroup(self, start: int) -> "ConvexSubgroup":
        if not 0 <= start <= self.height:
            raise UsageError(f"Нет выпуклой подгруппы с началом {start} в Q^{self.height}")
        return ConvexSubgroup(self, start)

    def convex_subgroups(self):
        """Все выпуклые подгруппы от всей группы до тривиальной."""
        return [ConvexSubgroup(self, j) for j in range(self.height + 1)]

    def convex_from_generators(self, generators: Iterable[LexValue]) -> "ConvexSubgroup":
        """Проверяет выпуклость подгруппы, заданной образующими; невыпуклая: ошибка."""
        gens = [g for g in generators if not g.is_one()]
        if not gens:
            return ConvexSubgroup(self, self.height)
        start = min(next(i for i, c in enumerate(g.coords) if c) for g in gens)
        if rational_rank([list(g.coords) for g in gens]) != self.height - start:
            raise UsageError("Подгруппа не выпукла: её Q-оболочка не является лексикографическим суффиксом")
        return ConvexSubgroup(self, start)

    def __eq__(self, other):
        return isinstance(other, LexValueGroup) and other.height == self.height

    def __hash__(self):
        return hash(("lex", self.height))

    def __repr__(self):
        return f"Q^{self.height} lex"


@dataclass(frozen=True)
class ConvexSubgroup:
    """{0}^start × Q^(height-start) внутри LexValueGroup."""
    group: LexValueGroup
    start: int

    def contains(self, v: LexValue) -> bool:
        return not any(v.coords[: self.start])

    @property
    def is_trivial(self) -> bool:
        return self.start == self.group.height

    @property
    def quotient(self) -> LexValueGroup:
        return LexValueGroup(self.start)


@dataclass(frozen=True)
class RealConvexSubgroup:
    """Тривиальная подгруппа (whole=False) или вся группа значений ранга 1."""
    group: "RealValueGroup"
    whole: bool

    @property
    def is_trivial(self) -> bool:
        return not self.whole


class RealValueGroup:
    """Группа значений ранга 1 внутри R_{>0}^×; выпуклы только тривиальная подгруппа и вся группа."""

    def __init__(self, group: MultRealGroup):
        self.group = group
        self.height = 1 if group.primes else 0

    def one(self) -> DegreeElement:
        return self.group.one()

    def convex_from_generators(self, generators: Iterable[DegreeElement]) -> "RealConvexSubgroup":
        gens = [self.group.coerce(g) for g in generators if not g.is_one()]
        if not gens:
            return RealConvexSubgroup(self, whole=False)
        sub = Subgroup(self.group, gens)
        for i in range(len(self.group.generators)):
            if order_modulo(self.group.generator(i), sub) is None:
                raise UsageError("Подгруппа не выпукла: в архимедовой группе выпуклы только {1} и вся группа")
        return RealConvexSubgroup(self, whole=True)

    def __eq__(self, other):
        return isinstance(other, RealValueGroup) and other.group == self.group

    def __hash__(self):
        return hash(("real", self.group))

    def __repr__(self):
        return f"{self.group} ⊂ R>0"


# ====================================================
# Общие операции над значениями (None = |0|)
# ====================================================
def value_compare(a: Optional[Value], b: Optional[Value]) -> Ordering:
    if a is None or b is None:
        if a is None and b is None:
            return Ordering.EQUAL
        return Ordering.LESS if a is None else Ordering.GREATER
    if isinstance(a, LexValue):
        return a.compare(b)
    return compare(a, b)


def value_max(a: Optional[Value], b: Optional[Value]) -> Optional[Value]:
    return a if value_compare(a, b) is not Ordering.LESS else b


def value_mul(a: Optional[Value], b: Optional[Value]) -> Optional[Value]:
    if a is None or b is None:
        return None
    return a * b


def coarsen(v: Optional[Value], H) -> Optional[Value]:
    """
    Образ значения при упорядоченном факторотображении по выпуклой подгруппе H.
    Для лексикографической группы: проекция на первые координаты.
    """
    if v is None:
        return None
    if isinstance(H, ConvexSubgroup):
        if not isinstance(v, LexValue) or v.height != H.group.height:
            raise UsageError(f"Значение {v} не лежит в группе {H.group}")
        return LexValue(H.start, v.coords[: H.start])
    if isinstance(H, RealConvexSubgroup):
        return LexValueGroup(0).one() if H.whole else v
    raise UsageError(f"Неподдерживаемая подгруппа {H}")
