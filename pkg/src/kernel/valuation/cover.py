"""
Разрезающее покрытие: открытые D(g_j) ⊂ X такие, что над каждой точкой τ_i
цепочки слой D(g_j) пуст или является связной компонентой X_{τ_i}.

Кандидаты g: числители идемпотентов связных компонент всех слоёв (и 1).
Каждый кандидат проверяется на каждом слое: ḡ ∈ I_τ (пусто) или найдётся
компонента C с ḡ обратимым на C и ḡ = 0 вне C.
"""
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import sympy

from src.kernel.algebra import primes as prime_tools
from src.kernel.algebra.context import LocalizedIdeal
from src.kernel.core.errors import InconclusiveError, NonReducedFiberError, UsageError
from src.kernel.core.settings import KernelSettings, resolve
from src.kernel.ideal.components import Idempotent, local_components
from src.kernel.valuation.chain import ChainPoint
from src.kernel.valuation.flatness import IntegralModel, is_flat_module

# Логирование
# ====================================================
from src.utils.logger.logger import get_logger
logger = get_logger(__name__)


@dataclass
class FiberCheck:
    point: str
    status: str             # "empty" или номер компоненты
    component: Optional[int] = None


@dataclass
class CoverOpen:
    generator: sympy.Expr
    checks: List[FiberCheck] = field(default_factory=list)

    def describe(self) -> str:
        fibers = ", ".join(f"{c.point}: {c.status}" for c in self.checks)
        return f"D({self.generator}) [{fibers}]"


@dataclass
class OpenCover:
    opens: List[CoverOpen] = field(default_factory=list)
    components: List[Tuple[str, int]] = field(default_factory=list)   # (точка, число компонент слоя)

    def generators(self) -> List[sympy.Expr]:
        return [o.generator for o in self.opens]

    def __len__(self):
        return len(self.opens)


def classify_on_fiber(
    g, fiber: LocalizedIdeal, components: List[Idempotent]
) -> Optional[Tuple[str, Optional[int]]]:
    """("empty", None) или ("component", k); None, если D(ḡ) не пусто и не компонента."""
    ctx = fiber.context
    g = ctx.normalize(g)
    if fiber.contains(g):
        return "empty", None
    for k, e in enumerate(components):
        unit_on_component = fiber.add([ctx.normalize(e.numerator - e.denominator), g]).is_unit
        zero_elsewhere = fiber.contains(ctx.normalize(g * (e.denominator - e.numerator)))
        if unit_on_component and zero_elsewhere:
            return "component", k
    return None


def fiber_splitting_cover(model: IntegralModel, settings: Optional[KernelSettings] = None) -> OpenCover:
    settings = resolve(settings)
    if not is_flat_module(model):
        raise UsageError(f"Модель {model} не плоская: покрытие строится только для плоских алгебр")

    fibers: List[Tuple[ChainPoint, LocalizedIdeal, List[Idempotent]]] = []
    for point, fiber in model.fibers():
        if not prime_tools.is_radical(fiber, settings):
            raise NonReducedFiberError(point.label, f"слой {fiber} не приведён")
        fibers.append((point, fiber, local_components(fiber, settings)))

    candidates: List[sympy.Expr] = [sympy.Integer(1)]
    for _, fiber, components in fibers:
        if len(components) < 2:
            continue
        for e in components:
            g = sympy.expand(e.numerator)
            if not any(sympy.expand(g - c) == 0 for c in candidates):
                candidates.append(g)

    cover = OpenCover(components=[(p.label, len(c)) for p, _, c in fibers])
    covered = {(p.label, k) for p, _, comps in fibers for k in range(len(comps))}
    reached = set()
    for g in candidates:
        checks = []
        valid = True
        for point, fiber, components in fibers:
            outcome = classify_on_fiber(model.reduce_to(point, g), fiber, components)
            if outcome is None:
                valid = False
                break
            status, k = outcome
            checks.append(FiberCheck(point.label, status if k is None else f"компонента {k + 1}", k))
        if not valid:
            logger.debug(f"🔍 Кандидат D({g}) отклонён")
            continue
        new = {(c.point, c.component) for c in checks if c.component is not None}
        if new - reached:
            cover.opens.append(CoverOpen(g, checks))
            reached |= new
    if reached != covered:
        missing = sorted(covered - reached)
        raise InconclusiveError(f"Кандидаты не покрывают компоненты слоёв: {missing}")
    logger.info(f"✅ Разрезающее покрытие {model}: {len(cover.opens)} открытых")
    return cover
