"""
Тесты однородных идеалов: принадлежность, радикал, размерность, спектр, компоненты, геометрические свойства
"""
import pytest
import sympy

from src.kernel.core.enums import Verdict
from src.kernel.core.errors import UndecidableError, UsageError
from src.kernel.corpoid.base_field import BaseField
from src.kernel.corpoid.corpoid import Corpoid
from src.kernel.corpoid.polynomial import GradedPolynomialRing
from src.kernel.ideal.components import connected_components
from src.kernel.ideal.geometric import is_geometrically_irreducible, is_geometrically_reduced
from src.kernel.ideal.graded_ideal import (
    GradedIdeal,
    dimension_over,
    groebner,
    is_reduced,
    minimal_primes,
    radical,
)
from src.kernel.ideal.spectrum import spectrum

T, U, s = sympy.symbols("T U s")


def _ring(base: BaseField, names=("T", "U")) -> GradedPolynomialRing:
    corpoid = Corpoid.trivial(base)
    return GradedPolynomialRing(corpoid, [(n, corpoid.group.one()) for n in names])


@pytest.fixture
def qring(rationals):
    """Фикстура: Q[T, U] с тривиальной градуировкой"""
    return _ring(rationals)


class TestIdealBasics:
    def test_membership(self, qring):
        """Тест: T^3 - T ∈ (T^2 - T), T ∉ (T^2 - T)"""
        ideal = GradedIdeal.from_exprs(qring, [T ** 2 - T])
        assert ideal.contains(qring.from_expr(T ** 3 - T))
        assert not ideal.contains(qring.from_expr(T))

    def test_unit_ideal(self, qring):
        """Тест: (T, T - 1) единичен"""
        ideal = GradedIdeal.from_exprs(qring, [T, T - 1])
        assert ideal.is_unit
        assert ideal.describe() == "(1)"
        assert groebner(ideal) == [1]
        with pytest.raises(UsageError):
            dimension_over(ideal)

    def test_dimension(self, qring):
        """Тест: размерность Крулля над полем коэффициентов"""
        assert dimension_over(GradedIdeal.from_exprs(qring, [T * U])) == 1
        assert dimension_over(GradedIdeal.from_exprs(qring, [T, U])) == 0

    def test_reduced_and_radical(self, qring):
        """Тест: (T·U) приведён, (T^2) нет, его радикал (T)"""
        assert is_reduced(GradedIdeal.from_exprs(qring, [T * U]))
        square = GradedIdeal.from_exprs(qring, [T ** 2])
        assert not is_reduced(square)
        assert radical(square).equals(GradedIdeal.from_exprs(qring, [T]))

    def test_minimal_primes(self, qring):
        """Тест: (T·U) = (T) ∩ (U)"""
        primes = minimal_primes(GradedIdeal.from_exprs(qring, [T * U]))
        assert len(primes) == 2
        expected = [GradedIdeal.from_exprs(qring, [T]), GradedIdeal.from_exprs(qring, [U])]
        assert all(any(p.equals(q) for p in primes) for q in expected)

    def test_describe(self, qring):
        """Тест: печать идеала образующими"""
        assert GradedIdeal.from_exprs(qring, [T * U]).describe() == "(T*U)"


class TestSpectrum:
    def test_points_and_specialization(self, qring):
        """Тест: две общие точки специализируются в начало координат"""
        ideal = GradedIdeal.from_exprs(qring, [T * U])
        origin = GradedIdeal.from_exprs(qring, [T, U])
        result = spectrum(ideal, [origin])
        assert len(result) == 3
        assert result.points[2].closed
        assert result.order == [(0, 2), (1, 2)]
        assert len(result.generic_points()) == 2
        assert result.specializes(0, 2)
        assert not result.specializes(0, 1)

    def test_point_outside(self, qring):
        """Тест: точка вне спектра отвергается"""
        ideal = GradedIdeal.from_exprs(qring, [T * U])
        with pytest.raises(UsageError):
            spectrum(ideal, [GradedIdeal.from_exprs(qring, [T - 1])])


class TestComponents:
    def test_two_components(self, qring):
        """Тест: Spec Q[T]/(T^2 - T) — две точки, сумма идемпотентов равна 1"""
        ideal = GradedIdeal.from_exprs(qring, [T ** 2 - T])
        idempotents = connected_components(ideal)
        assert len(idempotents) == 2
        total = sympy.expand(sum(e.as_expr() for e in idempotents) - 1)
        assert ideal.arithmetic.contains(total)

    def test_connected(self, qring):
        """Тест: крест T·U = 0 связен"""
        idempotents = connected_components(GradedIdeal.from_exprs(qring, [T * U]))
        assert len(idempotents) == 1
        assert idempotents[0].as_expr() == 1

    def test_empty_spectrum(self, qring):
        """Тест: у единичного идеала нет компонент"""
        assert connected_components(GradedIdeal.from_exprs(qring, [T, T - 1])) == []


class TestGeometricProperties:
    def test_irreducible_point(self, qring):
        """Тест: начало координат (T, U) геометрически неприводимо"""
        ideal = GradedIdeal.from_exprs(qring, [T, U])
        assert is_geometrically_irreducible(ideal) is Verdict.PASS

    def test_splits_over_closure(self, qring):
        """Тест: T^2 - 2 неприводим над Q, но не над алгебраическим замыканием"""
        ideal = GradedIdeal.from_exprs(qring, [T ** 2 - 2, U])
        assert len(minimal_primes(ideal)) == 1
        assert is_geometrically_irreducible(ideal) is Verdict.FAIL

    def test_finite_field_point(self, gf3):
        """Тест: T^2 + 1 над GF(3) расщепляется над GF(9)"""
        ideal = GradedIdeal.from_exprs(_ring(gf3, ("T",)), [T ** 2 + 1])
        assert is_geometrically_irreducible(ideal) is Verdict.FAIL

    def test_reduced_over_perfect_field(self, qring):
        """Тест: над совершенным полем геометрическая приведённость — приведённость"""
        assert is_geometrically_reduced(GradedIdeal.from_exprs(qring, [T ** 2 - 2]))
        assert not is_geometrically_reduced(GradedIdeal.from_exprs(qring, [T ** 2]))

    def test_imperfect_field_needs_extensions(self, gf3):
        """Тест: над GF(3)(s) без данных о расширении ответ не вычисляется"""
        field = BaseField.function_field(gf3, ["s"])
        ideal = GradedIdeal.from_exprs(_ring(field, ("T",)), [T ** 3 - s])
        with pytest.raises(UndecidableError):
            is_geometrically_reduced(ideal)
