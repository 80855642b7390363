"""
Цепочка точек Spec F° конечной высоты: τ_0 (общая) ⇝ ... ⇝ τ_h (замкнутая).

τ_i = {x ∈ F° : образ |x| в Γ/H_i меньше 1}, где H_i: выпуклая подгруппа
коранга i. Свидетель ν_i не лежит в τ_i и лежит в τ_{i+1}; ν_h = 1.
"""
from dataclasses import dataclass
from typing import List, Tuple

import sympy
from sympy import Symbol

from src.kernel.core.enums import ValuationKind
from src.kernel.core.errors import UsageError
from src.kernel.valuation.valuation import GradedValuation


@dataclass(frozen=True)
class ChainPoint:
    index: int
    witness: sympy.Expr
    killed: Tuple[Symbol, ...]          # параметры, обнуляемые в κ(τ_i)
    residue_parameters: Tuple[Symbol, ...]  # параметры, остающиеся в κ(τ_i)

    @property
    def label(self) -> str:
        return f"τ{self.index}"


class HeightChain:
    def __init__(self, valuation: GradedValuation):
        if valuation.height > 3:
            raise UsageError(f"Поддерживаются цепочки высоты не больше 3, получено {valuation.height}")
        self.valuation = valuation
        self.points: List[ChainPoint] = self._build()

    @property
    def height(self) -> int:
        return self.valuation.height

    def _build(self) -> List[ChainPoint]:
        v = self.valuation
        others = tuple(s for s in v.corpoid.base.parameters if s not in set(v.valued_parameters))
        if v.kind is ValuationKind.TRIVIAL:
            return [ChainPoint(0, sympy.Integer(1), (), others)]
        if v.kind is ValuationKind.PADIC:
            return [
                ChainPoint(0, sympy.Integer(v.prime), (), others),
                ChainPoint(1, sympy.Integer(1), (), others),
            ]
        ts = v.valued_parameters
        points = []
        for i in range(len(ts) + 1):
            witness = ts[i] if i < len(ts) else sympy.Integer(1)
            points.append(ChainPoint(i, witness, ts[:i], ts[i:] + others))
        return points

    def contains(self, index: int, x) -> bool:
        """x ∈ τ_index для x из F°, заданного многочленом от параметров."""
        v = self.valuation
        x = v.corpoid.base.normalize(x)
        if x == 0:
            return True
        if v.kind is ValuationKind.PADIC:
            return index == 1 and sympy.Rational(x).p % v.prime == 0
        point = self.points[index]
        reduced = v.corpoid.base.normalize(sympy.sympify(x).xreplace({t: 0 for t in point.killed}))
        return reduced == 0

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    def __repr__(self):
        return " ⇝ ".join(p.label for p in self.points)
