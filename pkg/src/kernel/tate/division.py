"""
Сильное деление в k{T/r}.

На каждом шаге берётся ведущий член остатка; если его моном делится на
моном ведущего члена образующей g_i, вычитается (c/c_i)·T^(α-β)·g_i, иначе
член уходит в остаток. Норма каждого добавленного к b_i члена равна
|член|/‖g_i‖, поэтому ‖b_i‖·ρ_i ≤ ‖f‖ выполняется по построению; цикл
останавливается, когда все члены опускаются ниже порога ε.
"""
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from src.kernel.core.errors import PrecisionError, UsageError
from src.kernel.core.settings import KernelSettings, resolve
from src.kernel.degree.groups import DegreeElement
from src.kernel.tate.series import TateSeries

# Логирование
# ====================================================
from src.utils.logger.logger import get_logger
logger = get_logger(__name__)


@dataclass
class DivisionResult:
    dividend: TateSeries
    generators: List[TateSeries]
    quotients: List[TateSeries]
    remainder: TateSeries
    steps: int = 0

    @property
    def in_ideal(self) -> bool:
        return self.remainder.is_zero

    @property
    def contract_ok(self) -> bool:
        """‖b_i‖·ρ_i ≤ ‖f‖ для всех i."""
        top = self.dividend.gauss_norm()
        for b, g in zip(self.quotients, self.generators):
            if b.is_zero:
                continue
            if top is None or b.gauss_norm() * g.gauss_norm() > top:
                return False
        return True

    def reconstruct(self) -> TateSeries:
        total = self.remainder
        for b, g in zip(self.quotients, self.generators):
            total = total + b * g
        return total

    def certificate_ok(self) -> bool:
        """Σ b_i·g_i + остаток совпадает с f на уровне точности ε."""
        return (self.reconstruct() - self.dividend).is_zero

    def require(self) -> "DivisionResult":
        if not self.in_ideal:
            raise UsageError(
                f"{self.dividend} не лежит в идеале {tuple(self.generators)} на данной точности "
                f"(остаток {self.remainder})"
            )
        return self


def divide(f: TateSeries, generators: Sequence[TateSeries], settings: Optional[KernelSettings] = None) -> DivisionResult:
    settings = resolve(settings)
    ring = f.ring
    gens = list(generators)
    for g in gens:
        if g.ring != ring:
            raise UsageError(f"Образующая {g} не лежит в {ring}")
        if g.is_zero:
            raise UsageError("Нулевая образующая в семействе деления")
    leading = [g.leading_term() for g in gens]
    quotients = [ring.zero() for _ in gens]
    remainder = ring.zero()
    p = f
    steps = 0
    while not p.is_zero:
        steps += 1
        if steps > settings.max_division_steps:
            raise PrecisionError(
                f"Деление {f} не сошлось за {settings.max_division_steps} шагов (остаток {p})"
            )
        exps, c, _ = p.leading_term()
        for i, (g_exps, g_coeff, _) in enumerate(leading):
            if all(a >= b for a, b in zip(exps, g_exps)):
                shift = tuple(a - b for a, b in zip(exps, g_exps))
                coeff = ring.field.div(c, g_coeff)
                quotients[i] = quotients[i] + ring.monomial(coeff, shift)
                p = (p - gens[i].scale(coeff, shift)).without(exps)
                break
        else:
            remainder = remainder + ring.monomial(c, exps)
            p = p.without(exps)
    logger.debug(f"🔍 Деление {f}: {steps} шагов, остаток {remainder}")
    return DivisionResult(f, gens, quotients, remainder, steps)


def strong_division(f: TateSeries, generators: Sequence[TateSeries],
                    settings: Optional[KernelSettings] = None) -> DivisionResult:
    """Коэффициенты b_i с f = Σ b_i·g_i и ‖b_i‖·ρ_i ≤ ‖f‖; вне идеала: UsageError."""
    return divide(f, generators, settings).require()


def normal_form(f: TateSeries, generators: Sequence[TateSeries], settings: Optional[KernelSettings] = None) -> TateSeries:
    if not generators:
        return f
    return divide(f, generators, settings).remainder


def s_polynomial(g: TateSeries, h: TateSeries) -> TateSeries:
    """(1/c_g)·T^(L-α)·g - (1/c_h)·T^(L-β)·h, L = lcm ведущих мономов."""
    field_ = g.ring.field
    a, cg, _ = g.leading_term()
    b, ch, _ = h.leading_term()
    lcm = tuple(max(x, y) for x, y in zip(a, b))
    left = g.scale(field_.inverse(cg), tuple(m - x for m, x in zip(lcm, a)))
    right = h.scale(field_.inverse(ch), tuple(m - y for m, y in zip(lcm, b)))
    return left - right


# ====================================================
# Возмущение сильно порождающих семейств
# ====================================================
@dataclass
class Perturbation:
    generators: List[TateSeries]
    contraction: Optional[DegreeElement]          # ε₀ = max ‖δ_i‖/‖g_i‖; None при δ = 0
    original: List[TateSeries] = field(default_factory=list)


def perturb_generators(generators: Sequence[TateSeries], deltas: Sequence[TateSeries]) -> Perturbation:
    if len(generators) != len(deltas):
        raise UsageError(f"Число возмущений {len(deltas)} не совпадает с числом образующих {len(generators)}")
    contraction: Optional[DegreeElement] = None
    result = []
    for g, delta in zip(generators, deltas):
        rho = g.gauss_norm()
        if rho is None:
            raise UsageError("Нулевая образующая не возмущается")
        size = delta.gauss_norm()
        if size is not None:
            if size >= rho:
                raise UsageError(f"‖δ‖ = {size} не меньше ‖g‖ = {rho} для образующей {g}")
            ratio = size / rho
            contraction = ratio if contraction is None or ratio > contraction else contraction
        result.append(g + delta)
    logger.info(f"✅ Возмущённое семейство: ε₀ = {contraction if contraction is not None else 0}")
    return Perturbation(result, contraction, list(generators))


def mutually_generate(first: Sequence[TateSeries], second: Sequence[TateSeries],
                      settings: Optional[KernelSettings] = None) -> bool:
    """Каждый элемент одного семейства сильно делится на другое (с контролем норм)."""
    for source, target in ((first, second), (second, first)):
        for g in source:
            result = divide(g, target, settings)
            if not (result.in_ideal and result.contract_ok):
                return False
    return True
