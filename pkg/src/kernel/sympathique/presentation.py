"""
Относительные представления B = A{T/r}/(a_1..a_m) над представлением A.

Соотношения хранятся в общем кольце k{S/s, T/r}; коэффициенты при мономах T
приводятся по соотношениям A (нормальная форма деления). Точки слоёв —
k-точки x базы: значения переменных S с |x(S)| ≤ s, на которых обнуляются
соотношения A.
"""
import threading
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

from sympy import Symbol

from src.kernel.core.errors import UsageError
from src.kernel.core.settings import KernelSettings
from src.kernel.degree.groups import DegreeElement
from src.kernel.sympathique.fibration import ResidueFibration
from src.kernel.tate.division import normal_form
from src.kernel.tate.presentation import TatePresentation
from src.kernel.tate.series import TateRing, TateSeries

# Логирование
# ====================================================
from src.utils.logger.logger import get_logger
logger = get_logger(__name__)


@dataclass(frozen=True)
class FiberPoint:
    values: Tuple[Tuple[Symbol, object], ...]     # (S, x(S)) с элементами поля

    @property
    def mapping(self) -> Dict[Symbol, object]:
        return dict(self.values)

    @property
    def label(self) -> str:
        return ", ".join(f"{s}={v}" for s, v in self.values) or "·"


class RelativePresentation:
    def __init__(
        self,
        base: TatePresentation,
        variables: Sequence[Tuple[str, Union[str, DegreeElement]]],
        relators: Sequence,
        fibers: Sequence[Dict[str, object]] = (),
        name: str = "B",
        settings: Optional[KernelSettings] = None,
    ):
        base_ring = base.ring
        field = base_ring.field
        self.base = base
        self.name = name
        self.base_symbols: Tuple[Symbol, ...] = base_ring.symbols
        self.total_ring = TateRing(
            field,
            list(zip(map(str, base_ring.symbols), base_ring.radii)) + list(variables),
            base_ring.eps_text,
        )
        self.relative_ring = TateRing(field, list(variables), base_ring.eps_text)
        self.fiber_symbols: Tuple[Symbol, ...] = self.relative_ring.symbols
        self.radii = self.relative_ring.radii
        self.base_relators: List[TateSeries] = [self.lift(a) for a in base.relators]
        series = [e if isinstance(e, TateSeries) else self.total_ring.from_expr(e) for e in relators]
        if self.base_relators:
            series = [normal_form(a, self.base_relators, settings) for a in series]
        self.relators: List[TateSeries] = [a for a in series if not a.is_zero]
        self.norms: List[DegreeElement] = [a.gauss_norm() for a in self.relators]
        self.points: List[FiberPoint] = [self._point(values) for values in fibers]
        self._lock = threading.Lock()
        self._fibration = None

    # ==========================
    # Factory methods
    # ==========================
    def lift(self, a: TateSeries) -> TateSeries:
        """Образ элемента k{S/s} в k{S/s, T/r}."""
        k = len(self.fiber_symbols)
        return self.total_ring.series({exps + (0,) * k: c for exps, c in a.terms.items()}, a.exact)

    def _point(self, values: Dict[str, object]) -> FiberPoint:
        ring = self.base.ring
        field = ring.field
        known = {Symbol(str(k)): v for k, v in values.items()}
        extra = set(known) - set(self.base_symbols)
        if extra:
            raise UsageError(f"Точка слоя задаёт неизвестные переменные базы: {sorted(map(str, extra))}")
        missing = set(self.base_symbols) - set(known)
        if missing:
            raise UsageError(f"Точка слоя не задаёт переменные {sorted(map(str, missing))}")
        pairs = []
        for symbol, radius in zip(self.base_symbols, ring.radii):
            value = field.from_expr(known[symbol])
            size = ring.coefficient_norm(value)
            if size is not None and size > radius:
                raise UsageError(f"Точка {symbol}={known[symbol]} вне полидиска: |x| = {size} > {radius}")
            pairs.append((symbol, value))
        point = FiberPoint(tuple(pairs))
        empty = TateRing(field, [], ring.eps_text)
        for a in self.base.relators:
            if not a.specialize(point.mapping, empty).is_zero:
                raise UsageError(f"Точка {point.label} не лежит в M({self.base.name}): {a} ≠ 0")
        return point

    # ------------------------
    # Слои
    # ------------------------
    def fiber(self, point: FiberPoint) -> TatePresentation:
        """Ограничение соотношений на диск D_x = M(κ(x){T/r})."""
        restricted = [a.specialize(point.mapping, self.relative_ring) for a in self.relators]
        return TatePresentation(self.relative_ring, restricted, f"{self.name}|{point.label}")

    def fibration(self, settings: Optional[KernelSettings] = None):
        """Редукция p: Spec Ã[r\\T]/(ã) → Spec Ã (вычисляется один раз)."""
        if self._fibration is None:
            with self._lock:
                if self._fibration is None:
                    self._fibration = ResidueFibration(self, settings)
        return self._fibration

    def describe(self) -> str:
        variables = ", ".join(f"{s}:{r}" for s, r in zip(self.fiber_symbols, self.radii))
        relators = ", ".join(str(a) for a in self.relators) or "0"
        return f"{self.base.name}{{{variables}}} / ({relators})"

    def __repr__(self):
        return self.describe()
