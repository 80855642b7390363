"""
Тесты алгебр Тейта: нормированные поля, ряды и точность, сильное деление, различимость, базисы Шаудера
"""
import dataclasses
from fractions import Fraction

import pytest
import sympy

from src.kernel.core.enums import Verdict
from src.kernel.core.errors import PrecisionError, UnsupportedError, UsageError
from src.kernel.corpoid.base_field import BaseField
from src.kernel.degree.groups import MultRealGroup
from src.kernel.tate.division import divide, perturb_generators, strong_division
from src.kernel.tate.laurent import LaurentField
from src.kernel.tate.newton import oracle_is_distinguished
from src.kernel.tate.presentation import (
    TatePresentation,
    is_distinguished,
    is_strongly_generating,
    quotient_norm_bound,
    reduce_presentation,
    reduce_series,
    spectral_norm_in_quotient,
    standard_basis,
)
from src.kernel.tate.scalar_extension import GaussValuedField, extend_scalars_gauss
from src.kernel.tate.schauder import in_residue_span, residues_independent, take_basis
from src.kernel.tate.series import TateRing
from src.kernel.tate.valued_field import PadicField, TriviallyValuedField, parse_eps

T, S, U, t = sympy.symbols("T S U t")
T1, T2 = sympy.symbols("T1 T2")
HALF = MultRealGroup([2]).from_rational(Fraction(1, 2))


@pytest.fixture
def q_disc(rationals):
    """Фикстура: Q{T} с тривиальной нормой"""
    return TateRing(TriviallyValuedField(rationals), [("T", "1")])


@pytest.fixture
def q2_disc(q2):
    """Фикстура: Q_2{T}"""
    return TateRing(q2, [("T", "1")])


class TestValuedFields:
    def test_padic_norm(self, q2):
        """Тест: |12|_2 = 1/4, вычет 12/4 = 3 ≡ 1 (mod 2)"""
        assert q2.norm(12) == HALF ** 2
        assert q2.norm(0) is None
        assert q2.unit_residue(12) == 1
        with pytest.raises(UsageError):
            PadicField(4)

    def test_laurent_inverse(self):
        """Тест: (1 + t)·(1 + t)^(-1) = 1 на точности t^6"""
        field = LaurentField(BaseField.prime(2), Fraction(1, 2), 6)
        a = field.from_expr(1 + t)
        inverse = field.inverse(a)
        assert inverse.precision == 6
        assert field.equal(field.mul(a, inverse), field.one())
        assert field.norm(field.from_expr(t ** 2 + t ** 3)) == HALF ** 2

    def test_laurent_precision(self):
        """Тест: норма O(t^5) не определяется"""
        field = LaurentField(BaseField.prime(2), Fraction(1, 2), 6)
        with pytest.raises(PrecisionError):
            field.norm(field.series({}, 5))

    def test_laurent_restrictions(self, rationals):
        """Тест: ряды Лорана только над конечными полями и с |t| < 1"""
        with pytest.raises(UnsupportedError):
            LaurentField(rationals, Fraction(1, 2), 6)
        with pytest.raises(UsageError):
            LaurentField(BaseField.prime(2), Fraction(2), 6)

    def test_eps(self, q2):
        """Тест: порог точности ε < 1"""
        assert parse_eps(q2, "exact") is None
        assert parse_eps(q2, "2^(-10)") == HALF ** 10
        with pytest.raises(PrecisionError):
            parse_eps(q2, "2")


class TestTateSeries:
    def test_gauss_norm_and_leading_term(self, q2):
        """Тест: в Q_2{T/(1/2)} все члены T^2 + 2T + 4 имеют норму 1/4"""
        ring = TateRing(q2, [("T", "1/2")])
        f = ring.from_expr(T ** 2 + 2 * T + 4)
        assert f.gauss_norm() == HALF ** 2
        assert len(f.top_terms()) == 3
        assert f.leading_term()[0] == (2,)

    def test_truncation_below_eps(self, q2):
        """Тест: член 16 ниже ε = 1/8 отбрасывается, ряд неточен"""
        ring = TateRing(q2, [("T", "1")], eps="2^(-3)")
        f = ring.from_expr(T + 16)
        assert set(f.terms) == {(1,)}
        assert not f.exact

    def test_variable_clash(self):
        """Тест: переменная кольца не совпадает с символом поля"""
        field = LaurentField(BaseField.prime(2), Fraction(1, 2), 6)
        with pytest.raises(UsageError):
            TateRing(field, [("t", "1")])


class TestDivision:
    def test_exact_division(self, q_disc):
        """Тест: T^2 - 1 = (T + 1)(T - 1) без остатка"""
        result = divide(q_disc.from_expr(T ** 2 - 1), [q_disc.from_expr(T - 1)])
        assert result.in_ideal
        assert result.contract_ok
        assert result.certificate_ok()
        assert result.quotients[0] == q_disc.from_expr(T + 1)

    def test_remainder(self, q_disc):
        """Тест: T^2 + 1 ∉ (T - 1), остаток 2"""
        result = divide(q_disc.from_expr(T ** 2 + 1), [q_disc.from_expr(T - 1)])
        assert result.remainder == q_disc.from_expr(2)
        with pytest.raises(UsageError):
            strong_division(q_disc.from_expr(T ** 2 + 1), [q_disc.from_expr(T - 1)])

    def test_perturbation(self, q2_disc):
        """Тест: возмущение T на 2 сжимает с ε₀ = 1/2, на 1 запрещено"""
        g = [q2_disc.from_expr(T)]
        result = perturb_generators(g, [q2_disc.from_expr(2)])
        assert result.contraction == HALF
        assert result.generators[0] == q2_disc.from_expr(T + 2)
        with pytest.raises(UsageError):
            perturb_generators(g, [q2_disc.from_expr(1)])


class TestDistinguished:
    def test_reduced_reduction(self, q_disc):
        """Тест: Q{T}/(T^2 - T) различимо"""
        presentation = TatePresentation.from_exprs(q_disc, [T ** 2 - T])
        assert is_distinguished(presentation)
        assert presentation.distinguished is True
        assert is_strongly_generating(presentation) is Verdict.PASS

    def test_nilpotent_reduction(self, q2_disc):
        """Тест: редукция T^2 - 2 над Q_2 равна T^2, представление не различимо"""
        presentation = TatePresentation.from_exprs(q2_disc, [T ** 2 - 2])
        assert not is_distinguished(presentation)
        with pytest.raises(UsageError):
            spectral_norm_in_quotient(presentation, q2_disc.from_expr(T))

    def test_spectral_norm(self, q_disc):
        """Тест: T^3 ≡ T по модулю T^2 - T, норма 1"""
        presentation = TatePresentation.from_exprs(q_disc, [T ** 2 - T])
        assert spectral_norm_in_quotient(presentation, q_disc.from_expr(T ** 3)).is_one()

    def test_newton_oracle_agrees(self, q2_disc):
        """Тест: оракул многоугольника Ньютона совпадает с проверкой редукции"""
        split = TatePresentation.from_exprs(q2_disc, [T ** 2 - T])
        ramified = TatePresentation.from_exprs(q2_disc, [T ** 2 - 2])
        assert oracle_is_distinguished(split).distinguished
        result = oracle_is_distinguished(ramified)
        assert not result.distinguished
        assert ("T", q2_disc.group.one(), HALF ** Fraction(1, 2)) in result.comparisons

    @pytest.mark.parametrize(
        "field_name, radii, relators, expected",
        [
            ("q2", [("T", "1")], [T ** 3 - 2 * T], False),
            ("q2", [("T", "1")], [T ** 2 + T + 1], True),
            ("trivial_q", [("T", "1")], [T ** 2], False),
            ("trivial_q", [("T", "1")], [T ** 2 - T], True),
            ("f3t", [("S", "1"), ("T", "1")], [S * T - 1], True),
        ],
    )
    def test_newton_oracle_matches_reduction(self, field_name, radii, relators, expected, request):
        """Тест: оракул Ньютона и проверка приведённости редукции дают одинаковый ответ"""
        ring = TateRing(request.getfixturevalue(field_name), radii)
        presentation = TatePresentation.from_exprs(ring, relators)
        assert oracle_is_distinguished(presentation).distinguished == expected
        assert is_distinguished(presentation) == expected


@pytest.fixture
def q_plane(rationals):
    """Фикстура: Q{T1, T2} с тривиальной нормой"""
    return TateRing(TriviallyValuedField(rationals), [("T1", "1"), ("T2", "1")])


@pytest.fixture
def cube_roots(q_plane):
    """Фикстура: Q{T1, T2}/(T1^2 - T2, T1·T2 - 1), соотношения не образуют стандартный базис"""
    return TatePresentation.from_exprs(q_plane, [T1 ** 2 - T2, T1 * T2 - 1], name="P")


class TestStandardBasis:
    def test_completion_adds_s_series_remainder(self, cube_roots, q_plane):
        """Тест: пополнение добавляет остаток S-ряда T1 - T2^2, результат кешируется"""
        basis = standard_basis(cube_roots)
        assert len(basis) > 2
        assert basis[:2] == cube_roots.relators
        assert divide(q_plane.from_expr(T2 ** 2 - T1), basis).in_ideal
        assert standard_basis(cube_roots) == basis

    def test_spectral_norm_sees_hidden_relation(self, cube_roots, q_plane):
        """Тест: T2^2 - T1 лежит в идеале, хотя делится на соотношения с ненулевым остатком"""
        a = q_plane.from_expr(T2 ** 2 - T1)
        assert not divide(a, cube_roots.relators).in_ideal
        assert is_distinguished(cube_roots)
        assert spectral_norm_in_quotient(cube_roots, a) is None
        assert quotient_norm_bound(cube_roots, a) is None
        assert spectral_norm_in_quotient(cube_roots, q_plane.from_expr(T1)).is_one()

    def test_basis_size_cap(self, cube_roots, settings):
        """Тест: MAX_BASIS_SIZE = 2 не даёт завершить пополнение"""
        capped = dataclasses.replace(settings, max_basis_size=2)
        with pytest.raises(PrecisionError):
            standard_basis(cube_roots, capped)
        assert cube_roots._standard is None
        assert is_strongly_generating(cube_roots, settings=capped) is not Verdict.PASS


class TestStrongGeneration:
    def test_completed_basis_reductions_inside(self, cube_roots):
        """Тест: при тривиальной норме редукции стандартного базиса лежат в (ã_i)"""
        assert is_strongly_generating(cube_roots) is Verdict.PASS
        assert cube_roots.strongly_generating is Verdict.PASS
        assert cube_roots.witness is None

    def test_hidden_unit_multiple_fails(self, q2):
        """Тест: (T, T + 2U) над Q_2 содержит U, но Ũ ∉ (T̃)"""
        ring = TateRing(q2, [("T", "1"), ("U", "1")])
        presentation = TatePresentation.from_exprs(ring, [T, T + 2 * U], name="N")
        assert is_strongly_generating(presentation) is Verdict.FAIL
        residue_ring = ring.residue_ring()
        ideal = reduce_presentation(presentation)
        assert not ideal.contains(reduce_series(presentation.witness, residue_ring))

    def test_single_relator_checks_witnesses(self, q_disc):
        """Тест: одно соотношение: свидетель из идеала даёт PASS, свидетель вне идеала отклоняется"""
        presentation = TatePresentation.from_exprs(q_disc, [T ** 2 - T])
        inside = q_disc.from_expr((T + 1) * (T ** 2 - T))
        assert is_strongly_generating(presentation, witnesses=[inside]) is Verdict.PASS
        with pytest.raises(UsageError):
            is_strongly_generating(presentation, witnesses=[q_disc.from_expr(T + 1)])


class TestReducePresentation:
    @pytest.mark.parametrize("field_name", ["trivial_q", "q2", "f3t"])
    def test_empty_presentation(self, field_name, request):
        """Тест: пустое представление даёт нулевой идеал k̃[r\\T]"""
        ring = TateRing(request.getfixturevalue(field_name), [("T", "1"), ("U", "2^(1/2)")])
        ideal = reduce_presentation(TatePresentation(ring, []))
        assert ideal.generators == ()

    def test_top_terms_kept(self, q2_disc):
        """Тест: над Q_2 редукция T^2 - 2 равна T^2, редукция T^2 - T не меняется"""
        residue_ring = q2_disc.residue_ring()
        ramified = reduce_presentation(TatePresentation.from_exprs(q2_disc, [T ** 2 - 2]))
        assert ramified.generators == (reduce_series(q2_disc.from_expr(T ** 2), residue_ring),)
        split = reduce_presentation(TatePresentation.from_exprs(q2_disc, [T ** 2 - T]))
        (generator,) = split.generators
        assert len(generator.terms) == 2
        assert generator.degree.is_one()

    def test_norm_outside_gamma(self, q2):
        """Тест: ‖T‖ = 2^(1/3) вне Γ·|Q_2^×| отклоняется"""
        ring = TateRing(q2, [("T", "2^(1/3)")])
        with pytest.raises(UsageError):
            reduce_presentation(TatePresentation.from_exprs(ring, [T]))


class TestScalarExtension:
    def test_gauss_field_norm(self, q2):
        """Тест: |S + 9| = max(3, 1) в Q_2(S/3)^"""
        field = GaussValuedField(q2, "S", "3")
        assert str(field.norm(field.from_expr(S + 9))) == "3"
        assert field.order is None

    def test_norms_preserved(self, q2_disc):
        """Тест: расширение скаляров сохраняет норму Гаусса"""
        f = q2_disc.from_expr(T - 2)
        extended = extend_scalars_gauss(f, "S", "3")
        assert extended.gauss_norm() == f.gauss_norm()

    def test_laurent_base_rejected(self):
        """Тест: расширение Гаусса над рядами Лорана не поддерживается"""
        with pytest.raises(UnsupportedError):
            GaussValuedField(LaurentField(BaseField.prime(2), Fraction(1, 2), 6), "S", "3")


class TestSchauderBasis:
    def test_unit_radius_over_gf2(self):
        """Тест: 1, T, 1/T, 1/(T + 1) при границе 1 над GF(2)"""
        field = TriviallyValuedField(BaseField.prime(2))
        basis = take_basis(field, "1", 1)
        assert [b.expr for b in basis] == [sympy.Integer(1), T, 1 / T, 1 / (T + 1)]
        assert all(b.norm.is_one() for b in basis)
        assert residues_independent(field, basis)

    def test_free_radius(self, rationals):
        """Тест: свободный радиус даёт T^i, -2 ≤ i ≤ 2"""
        field = TriviallyValuedField(rationals)
        basis = take_basis(field, "3", 2)
        assert [b.expr for b in basis] == [T ** i for i in range(-2, 3)]
        assert str(basis[-1].norm) == "3^2"

    def test_residue_span(self, rationals):
        """Тест: 1 + T лежит в оболочке {1, T}, T^2 нет"""
        field = TriviallyValuedField(rationals)
        basis = take_basis(field, "1", 1)[:2]
        assert in_residue_span(field, basis, 1 + T)
        assert not in_residue_span(field, basis, T ** 2)

    def test_negative_bound(self, rationals):
        """Тест: граница перебора неотрицательна"""
        with pytest.raises(UsageError):
            take_basis(TriviallyValuedField(rationals), "1", -1)

    def test_enumeration_order_over_gf2(self):
        """Тест: порядок перебора при границе 2 над GF(2): степени, затем T^d/P^m по P"""
        field = TriviallyValuedField(BaseField.prime(2))
        basis = take_basis(field, "1", 2)
        assert [b.expr for b in basis] == [
            sympy.Integer(1), T, T ** 2,
            1 / T, 1 / T ** 2,
            1 / (T + 1), 1 / (T + 1) ** 2,
            T / (T ** 2 + T + 1), 1 / (T ** 2 + T + 1),
        ]

    @pytest.mark.parametrize("p, quadratic", [(2, T ** 2 + T + 1), (3, T ** 2 + T + 2)])
    def test_bound_four_independent_and_spanning(self, p, quadratic):
        """Тест: при границе 4 вычеты независимы, простейшие дроби с полюсами кратности ≤ 4 в оболочке"""
        field = TriviallyValuedField(BaseField.prime(p))
        basis = take_basis(field, "1", 4)
        assert residues_independent(field, basis)
        assert in_residue_span(field, basis, T ** 3 / (T + 1) ** 2)
        assert in_residue_span(field, basis, 1 / quadratic ** 2)
        assert not in_residue_span(field, basis, 1 / (T + 1) ** 5)
        assert not in_residue_span(field, basis, T ** 5)
