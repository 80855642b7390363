from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from src.kernel.core.errors import UsageError
from src.kernel.core.settings import KernelSettings
from src.kernel.ideal.graded_ideal import GradedIdeal, dimension_over, minimal_primes

# Логирование
# ====================================================
from src.utils.logger.logger import get_logger
logger = get_logger(__name__)


@dataclass
class SpectrumPoint:
    prime: GradedIdeal
    label: str
    dimension: int
    closed: bool = False

    def describe(self) -> str:
        return f"{self.label}: {self.prime.describe()} (dim {self.dimension})"


@dataclass
class FiniteSpectrum:
    """Перечисленные точки спектра и порядок специализации (ξ ⇝ η, если P_ξ ⊆ P_η)."""
    points: List[SpectrumPoint] = field(default_factory=list)
    order: List[Tuple[int, int]] = field(default_factory=list)

    def specializes(self, i: int, j: int) -> bool:
        return i == j or (i, j) in self.order

    def generic_points(self) -> List[SpectrumPoint]:
        return [p for k, p in enumerate(self.points) if not any(b == k for a, b in self.order)]

    def __len__(self):
        return len(self.points)


def spectrum(
    ideal: GradedIdeal,
    points: Sequence[GradedIdeal] = (),
    settings: Optional[KernelSettings] = None,
) -> FiniteSpectrum:
    """Минимальные простые плюс запрошенные замкнутые точки (каждая должна содержать I)."""
    result = FiniteSpectrum()
    for k, prime in enumerate(minimal_primes(ideal, settings)):
        result.points.append(SpectrumPoint(prime, f"η{k + 1}", dimension_over(prime)))
    for k, point in enumerate(points):
        if not point.contains_ideal(ideal):
            raise UsageError(f"Точка {point} не лежит в спектре {ideal}")
        if any(p.prime.equals(point) for p in result.points):
            continue
        result.points.append(SpectrumPoint(point, f"ξ{k + 1}", dimension_over(point), closed=True))
    for i, a in enumerate(result.points):
        for j, b in enumerate(result.points):
            if i != j and b.prime.contains_ideal(a.prime):
                result.order.append((i, j))
    logger.debug(f"📊 Спектр: {len(result.points)} точек, {len(result.order)} специализаций")
    return result
