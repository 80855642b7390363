"""
Геометрические свойства: приведённость и неприводимость после расширения
поля коэффициентов до алгебраического замыкания.

Оба вопроса задаются видом идеала над F¹ (W = 1, сечения сняты).
Приведённость над несовершенным полем проверяется критерием Маклейна на
одном уровне корней p-й степени. Неприводимость ищется ограниченно: число
геометрических компонент c делит n_K = [κ(P) : κ_0(U)], поэтому достаточно
проверить расщепление над расширениями простых степеней ℓ | n_K.
"""
import functools
import math
import random
from typing import List, Optional, Sequence, Tuple

import sympy
from sympy import Dummy, Poly, Symbol

from src.kernel.algebra import primes as prime_tools
from src.kernel.algebra.context import (
    AlgebraContext,
    LocalizedIdeal,
    independent_set,
    minimal_polynomial,
    standard_monomial_count,
)
from src.kernel.core.enums import Verdict
from src.kernel.core.errors import InconclusiveError, UndecidableError
from src.kernel.core.settings import KernelSettings, resolve
from src.kernel.corpoid.base_field import first_irreducible
from src.kernel.ideal.graded_ideal import GradedIdeal

# Логирование
# ====================================================
from src.utils.logger.logger import get_logger
logger = get_logger(__name__)


def imperfect_parameters(ideal: GradedIdeal) -> Tuple[Symbol, ...]:
    """Параметры поля коэффициентов, из которых не извлекаются корни p-й степени."""
    if ideal.ring.corpoid.base.characteristic == 0:
        return ()
    return tuple(ideal.localized) + tuple(ideal.ring.corpoid.base.parameters)


def _with_extensions(source: LocalizedIdeal, extensions: Sequence[Tuple[Symbol, sympy.Expr]]) -> LocalizedIdeal:
    symbols = [s for s, _ in extensions]
    ctx = source.context.with_variables(symbols)
    return LocalizedIdeal(ctx, list(source.generators) + [r for _, r in extensions])


def is_geometrically_reduced(
    ideal: GradedIdeal,
    extensions: Optional[Sequence[Tuple[Symbol, sympy.Expr]]] = None,
    settings: Optional[KernelSettings] = None,
) -> bool:
    """
    B ⊗ F̄¹ приведено. extensions: пары (σ, σ^p - s) для несовершенного поля;
    без них над несовершенным полем ответ не вычисляется.
    """
    settings = resolve(settings)
    geometric = ideal.geometric
    if not imperfect_parameters(ideal):
        return prime_tools.is_radical(geometric, settings)
    if extensions is None:
        raise UndecidableError(
            f"Поле коэффициентов несовершенно ({', '.join(map(str, imperfect_parameters(ideal)))}): нужны данные о расширении"
        )
    if ideal.coefficient_variables:
        field_part = LocalizedIdeal(
            geometric.context,
            [g for g in geometric.generators if g.free_symbols <= set(ideal.coefficient_variables) | set(geometric.context.parameters) | set(ideal.ring.corpoid.base.algebraic)],
        )
        if not prime_tools.is_radical(_with_extensions(field_part, extensions), settings):
            raise UndecidableError("Поле вычетов точки базы несепарабельно над полем параметров")
    extended = _with_extensions(geometric, extensions)
    reduced = prime_tools.is_radical(extended, settings)
    logger.debug(f"🔍 Геометрическая приведённость {ideal}: {reduced} (расширение {len(extensions)} корнями)")
    return reduced


# ====================================================
# Геометрическая неприводимость
# ====================================================
class IrreducibilitySearch:
    def __init__(self, ideal: GradedIdeal, settings: Optional[KernelSettings] = None):
        self.ideal = ideal
        self.settings = resolve(settings)
        self.rng = random.Random(self.settings.seed)
        self.characteristic = ideal.ring.corpoid.base.characteristic

    def run(self) -> Verdict:
        geometric = self.ideal.geometric
        if geometric.is_unit:
            return Verdict.FAIL
        dim, free = independent_set(geometric)
        if dim > self.settings.dim_bound:
            raise InconclusiveError(f"Размерность {dim} больше DIM_BOUND = {self.settings.dim_bound}")
        primes = prime_tools.minimal_primes(geometric, self.settings)
        if len(primes) != 1:
            logger.debug(f"📊 {self.ideal}: уже над полем коэффициентов {len(primes)} компонент")
            return Verdict.FAIL
        prime = primes[0]
        dim, free = independent_set(prime)
        local = LocalizedIdeal(prime.context.localize(free), prime.basis)
        n = standard_monomial_count(local)
        e = self.ideal.coefficient_degree(geometric=True)
        n_k = max(1, n // e)
        logger.debug(f"🔍 n = {n}, e = {e}, n_K = {n_k}, dim = {dim}")
        if n_k == 1:
            return Verdict.PASS
        finite = self.characteristic and not imperfect_parameters(self.ideal)
        if dim == 0:
            if self.characteristic == 0 or finite:
                return Verdict.FAIL
            return self._purely_inseparable(local, e)
        if finite:
            return self._finite_field_split(prime, n_k, e)
        if self.characteristic == 0:
            return self._specialize(prime, free, e)
        raise InconclusiveError("Неприводимость над несовершенным полем положительной размерности не решается")

    # ------------------------
    # Нульмерный случай над несовершенным полем
    # ------------------------
    def _purely_inseparable(self, local: LocalizedIdeal, e: int) -> Verdict:
        """Точка геометрически неприводима, если каждая переменная чисто несепарабельна (z^(p^k) - c)."""
        if e != 1:
            raise InconclusiveError("Чисто несепарабельный критерий только над полем без алгебраической части")
        p = self.characteristic
        for v in local.context.variables:
            g, z = minimal_polynomial(local, v)
            poly = Poly(g, z)
            degree = poly.degree()
            inner = [m for (m,) in poly.monoms() if m not in (0, degree)]
            if inner:
                raise InconclusiveError(f"Минимальный многочлен {g} переменной {v} не чисто несепарабелен")
            if not _is_power(degree, p):
                raise InconclusiveError(f"Степень {degree} не является степенью {p}")
        return Verdict.PASS

    # ------------------------
    # Конечное поле: расширения простых степеней
    # ------------------------
    def _finite_field_split(self, prime: LocalizedIdeal, n_k: int, e: int) -> Verdict:
        candidates = sorted(sympy.primefactors(n_k))
        too_large = [l for l in candidates if l > self.settings.deg_bound]
        for l in candidates:
            if l > self.settings.deg_bound:
                continue
            b = Dummy("b")
            modulus = first_irreducible(self.characteristic, l * e, b)
            extended = LocalizedIdeal(prime.context.with_variables([b]), list(prime.basis) + [modulus])
            count = len(prime_tools.minimal_primes(extended, self.settings))
            logger.debug(f"🔍 Расширение степени {l}: {count} компонент (при e = {e})")
            if count > e:
                return Verdict.FAIL
        if too_large:
            raise InconclusiveError(f"Простые делители n_K = {n_k} больше DEG_BOUND: {too_large}")
        return Verdict.PASS

    # ------------------------
    # Характеристика 0: специализации
    # ------------------------
    def _specialize(self, prime: LocalizedIdeal, free: Sequence[Symbol], e: int) -> Verdict:
        ctx = prime.context
        rest = AlgebraContext(ctx.characteristic, tuple(v for v in ctx.variables if v not in set(free)), ctx.parameters)
        smallest: Optional[Tuple[int, LocalizedIdeal]] = None
        hits = 0
        for _ in range(self.settings.random_samples):
            values = {u: sympy.Integer(self.rng.randint(-50, 50)) for u in free}
            special = LocalizedIdeal(rest, [g.xreplace(values) for g in prime.basis])
            if special.is_unit or independent_set(special)[0] != 0:
                continue
            points = prime_tools.minimal_primes(special, self.settings)
            degrees = [max(1, standard_monomial_count(q) // e) for q in points]
            for q, d in zip(points, degrees):
                if smallest is None or d < smallest[0]:
                    smallest = (d, q)
            if functools.reduce(math.gcd, degrees) == 1:
                hits += 1
                if hits >= 2:
                    return Verdict.PASS
        if smallest is None:
            raise InconclusiveError("Не найдено хороших специализаций")
        return self._split_over_point(prime, smallest, e)

    def _split_over_point(self, prime: LocalizedIdeal, smallest, e: int) -> Verdict:
        degree, point = smallest
        if e != 1:
            raise InconclusiveError("Присоединение поля вычетов точки только над Q")
        for v in point.context.variables:
            g, z = minimal_polynomial(point, v)
            if Poly(g, z).degree() != degree:
                continue
            b = Dummy("b")
            extended = LocalizedIdeal(prime.context.with_variables([b]), list(prime.basis) + [g.subs(z, b)])
            count = len(prime_tools.minimal_primes(extended, self.settings))
            logger.debug(f"🔍 Над полем вычетов степени {degree}: {count} компонент")
            if count > 1:
                return Verdict.FAIL
            break
        raise InconclusiveError(f"Компонента не расщепилась над полем вычетов степени {degree}")


def _is_power(n: int, p: int) -> bool:
    while n > 1 and n % p == 0:
        n //= p
    return n == 1


def is_geometrically_irreducible(ideal: GradedIdeal, settings: Optional[KernelSettings] = None) -> Verdict:
    """PASS / FAIL; ограниченный поиск без ответа поднимает InconclusiveError."""
    return IrreducibilitySearch(ideal, settings).run()


def geometric_components(ideal: GradedIdeal, settings: Optional[KernelSettings] = None) -> List[LocalizedIdeal]:
    """Компоненты вида над F¹ (над полем коэффициентов, без расширения)."""
    return prime_tools.minimal_primes(ideal.geometric, resolve(settings))
