from dataclasses import dataclass, field
from typing import List, Optional

from src.kernel.core.enums import Verdict
from src.kernel.valuation.cover import OpenCover

CONDITION_NAMES = {
    1: "radii",
    2: "fiber_norms",
    3: "fiber_strong_generation",
    4: "reduction_flat_reduced",
    5: "geom_irreducible_components",
    6: "splitting_cover",
}


@dataclass
class ConditionResult:
    number: Optional[int]               # 1..6; None для проверок вне шести условий
    name: str
    verdict: Verdict
    witness: Optional[str] = None       # точка слоя, простой идеал, элемент кручения
    detail: str = ""

    def describe(self) -> str:
        label = f"({self.number}) {self.name}" if self.number else self.name
        text = f"{label}: {self.verdict.value}"
        if self.witness:
            text += f" [{self.witness}]"
        return text


@dataclass
class SympathiqueReport:
    presentation: str
    conditions: List[ConditionResult] = field(default_factory=list)
    cover: Optional[OpenCover] = None

    @property
    def overall(self) -> Verdict:
        """PASS ⟺ все шесть условий PASS."""
        if len(self.conditions) < len(CONDITION_NAMES):
            return Verdict.combine([c.verdict for c in self.conditions] + [Verdict.INCONCLUSIVE])
        return Verdict.combine(c.verdict for c in self.conditions)

    def condition(self, number: int) -> ConditionResult:
        for c in self.conditions:
            if c.number == number:
                return c
        raise KeyError(number)

    def failing(self) -> List[ConditionResult]:
        return [c for c in self.conditions if c.verdict is Verdict.FAIL]
