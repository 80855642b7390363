"""
Представления A = k{T/r}/(a_1..a_m) и функтор редукции.

Редукция ã_i: сумма вычетов членов максимальной нормы, однородный элемент
степени ρ_i = ‖a_i‖ в k̃[r\\T]. Флаги strongly_generating и distinguished
выставляются только соответствующими проверками.
"""
import random
import threading
from itertools import combinations
from typing import List, Optional, Sequence

from src.kernel.core.enums import Verdict
from src.kernel.core.errors import PrecisionError, UsageError
from src.kernel.core.settings import KernelSettings, resolve
from src.kernel.corpoid.polynomial import GradedPolynomial
from src.kernel.degree.groups import DegreeElement
from src.kernel.ideal.graded_ideal import GradedIdeal, is_reduced
from src.kernel.tate.division import divide, normal_form, s_polynomial
from src.kernel.tate.series import TateRing, TateSeries

# Логирование
# ====================================================
from src.utils.logger.logger import get_logger
logger = get_logger(__name__)


class TatePresentation:
    def __init__(self, ring: TateRing, relators: Sequence[TateSeries], name: str = "A"):
        for a in relators:
            if a.ring != ring:
                raise UsageError(f"Соотношение {a} не лежит в {ring}")
        self.ring = ring
        self.name = name
        self.relators: List[TateSeries] = [a for a in relators if not a.is_zero]
        self.norms: List[DegreeElement] = [a.gauss_norm() for a in self.relators]
        self.strongly_generating: Optional[Verdict] = None
        self.distinguished: Optional[bool] = None
        self.witness: Optional[TateSeries] = None
        self._standard: Optional[List[TateSeries]] = None
        self._lock = threading.Lock()

    # ==========================
    # Factory methods
    # ==========================
    @classmethod
    def from_exprs(cls, ring: TateRing, exprs: Sequence, name: str = "A") -> "TatePresentation":
        return cls(ring, [ring.from_expr(e) for e in exprs], name)

    def describe(self) -> str:
        if not self.relators:
            return str(self.ring)
        return f"{self.ring} / ({', '.join(str(a) for a in self.relators)})"

    def __repr__(self):
        return self.describe()


# ====================================================
# Функтор редукции
# ====================================================
def reduce_series(f: TateSeries, residue_ring) -> GradedPolynomial:
    """f̃ ∈ k̃[r\\T] степени ‖f‖."""
    ring = f.ring
    top = f.gauss_norm()
    if top is None:
        return residue_ring.zero()
    corpoid = residue_ring.corpoid
    terms = {}
    for exps, c in f.top_terms().items():
        terms[exps] = ring.field.residue_coefficient(c, corpoid)
    return GradedPolynomial(residue_ring, terms, top)


def reduction_ideal(presentation: TatePresentation) -> GradedIdeal:
    residue_ring = presentation.ring.residue_ring()
    reductions = [reduce_series(a, residue_ring) for a in presentation.relators]
    ideal = GradedIdeal(residue_ring, reductions)
    logger.debug(f"🔍 Редукция {presentation.name}: {ideal.describe()}")
    return ideal


def reduce_presentation(presentation: TatePresentation) -> GradedIdeal:
    """(ã_1, ..., ã_m) в k̃[r\\T]; требуется ρ_i ∈ Γ·|k^×|."""
    ring = presentation.ring
    for a, rho in zip(presentation.relators, presentation.norms):
        if not ring.in_gamma(rho):
            raise UsageError(f"Норма ‖{a}‖ = {rho} не лежит в Γ = {ring.gamma}")
    return reduction_ideal(presentation)


def is_distinguished(presentation: TatePresentation, settings: Optional[KernelSettings] = None) -> bool:
    """Представление различимо ⟺ k̃[r\\T]/(ã_i) приведено."""
    reduced = is_reduced(reduce_presentation(presentation), settings)
    with presentation._lock:
        presentation.distinguished = reduced
    logger.info(f"{'✅' if reduced else '❌'} {presentation.name}: различимость = {reduced}")
    return reduced


# ====================================================
# Стандартный базис и сильная порождаемость
# ====================================================
def standard_basis(presentation: TatePresentation, settings: Optional[KernelSettings] = None) -> List[TateSeries]:
    """
    Пополнение соотношений остатками S-рядов. Порядок членов: норма, затем grevlex.
    У любого элемента идеала ведущий моном делится на ведущий моном элемента базиса,
    поэтому остаток деления на базис имеет наименьшую норму среди всех подъёмов.
    PrecisionError: базис превысил MAX_BASIS_SIZE или деление не сошлось.
    """
    settings = resolve(settings)
    with presentation._lock:
        if presentation._standard is not None:
            return list(presentation._standard)
    basis = list(presentation.relators)
    pairs = list(combinations(range(len(basis)), 2))
    while pairs:
        i, j = pairs.pop(0)
        remainder = normal_form(s_polynomial(basis[i], basis[j]), basis, settings)
        if remainder.is_zero:
            continue
        if len(basis) >= settings.max_basis_size:
            raise PrecisionError(
                f"Стандартный базис {presentation.name} не уложился в {settings.max_basis_size} элементов"
            )
        pairs.extend((k, len(basis)) for k in range(len(basis)))
        basis.append(remainder)
    logger.debug(f"📊 Стандартный базис {presentation.name}: {len(presentation.relators)} -> {len(basis)}")
    with presentation._lock:
        presentation._standard = list(basis)
    return basis


def _completion(presentation: TatePresentation, settings: KernelSettings) -> Optional[List[TateSeries]]:
    try:
        return standard_basis(presentation, settings)
    except PrecisionError as e:
        logger.warning(f"⚠️ {presentation.name}: пополнение не завершено ({e})")
        return None


def _random_combination(presentation: TatePresentation, rng: random.Random) -> TateSeries:
    ring = presentation.ring
    total = ring.zero()
    for a in presentation.relators:
        total = total + ring.random_series(rng, terms=2, degree=1) * a
    return total


def _residue_member(presentation: TatePresentation, ideal: GradedIdeal, f: TateSeries) -> bool:
    if f.is_zero:
        return True
    return ideal.contains(reduce_series(f, ideal.ring))


def _check_witnesses(presentation: TatePresentation, witnesses: Sequence[TateSeries],
                     basis: Optional[List[TateSeries]], settings: KernelSettings):
    if basis is None:
        return
    for f in witnesses:
        try:
            outside = not normal_form(f, basis, settings).is_zero
        except PrecisionError:
            logger.warning(f"⚠️ {presentation.name}: принадлежность свидетеля {f} не установлена")
            continue
        if outside:
            raise UsageError(f"Свидетель {f} не лежит в идеале {presentation.name}")


def is_strongly_generating(
    presentation: TatePresentation,
    witnesses: Sequence[TateSeries] = (),
    settings: Optional[KernelSettings] = None,
) -> Verdict:
    """
    (a) Свидетели и случайные Σ c_i·a_i: вычет каждого лежит в (ã_i), иначе FAIL.
    (b) Пополненный базис g_1..g_s: k̃[r\\T]/(ã_i) → Ã инъективно ⟺ все g̃_j ∈ (ã_i).
    Одно соотношение: PASS по мультипликативности нормы Гаусса.
    INCONCLUSIVE: пополнение не завершено.
    """
    settings = resolve(settings)
    relators = presentation.relators
    ideal = reduction_ideal(presentation)
    basis = _completion(presentation, settings)
    _check_witnesses(presentation, witnesses, basis, settings)

    verdict, witness = Verdict.INCONCLUSIVE, None
    rng = random.Random(settings.seed)
    samples = list(witnesses) + [_random_combination(presentation, rng) for _ in range(settings.random_elements)]
    for f in samples:
        try:
            member = _residue_member(presentation, ideal, f)
        except PrecisionError:
            continue
        if not member:
            verdict, witness = Verdict.FAIL, f
            break

    if verdict is not Verdict.FAIL:
        if len(relators) <= 1:
            verdict = Verdict.PASS
        elif basis is not None:
            outside = [g for g in basis if not _residue_member(presentation, ideal, g)]
            if outside:
                verdict, witness = Verdict.FAIL, outside[0]
            else:
                verdict = Verdict.PASS
                route = "(b), редукция приведена" if is_reduced(ideal, settings) else "стандартный базис"
                logger.debug(f"🔍 {presentation.name}: инъективность редукции проверена, маршрут {route}")

    if witness is not None:
        logger.info(f"❌ {presentation.name}: вычет {witness} не лежит в (ã_i)")
    with presentation._lock:
        presentation.strongly_generating = verdict
        presentation.witness = witness
    logger.info(f"🔍 {presentation.name}: сильная порождаемость = {verdict.value}")
    return verdict


def spectral_norm_in_quotient(presentation: TatePresentation, a: TateSeries,
                              settings: Optional[KernelSettings] = None) -> Optional[DegreeElement]:
    """
    Наименьшая норма подъёма a: остаток деления на стандартный базис.
    Для различимых представлений совпадает со спектральной нормой; None: a = 0 в фактор-алгебре.
    """
    if presentation.distinguished is None:
        is_distinguished(presentation, settings)
    if not presentation.distinguished:
        raise UsageError(f"Представление {presentation.name} не различимо: спектральная норма не вычисляется")
    remainder = normal_form(a, standard_basis(presentation, settings), settings)
    if remainder.is_zero:
        return None
    return remainder.gauss_norm()


def quotient_norm_bound(presentation: TatePresentation, a: TateSeries,
                        settings: Optional[KernelSettings] = None) -> Optional[DegreeElement]:
    """
    Фактор-норма inf ‖a + i‖: точная при завершённом пополнении,
    иначе верхняя оценка остатком деления на соотношения.
    """
    settings = resolve(settings)
    basis = _completion(presentation, settings)
    remainder = normal_form(a, basis if basis is not None else presentation.relators, settings)
    return None if remainder.is_zero else remainder.gauss_norm()
