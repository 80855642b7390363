"""
Тесты градуированных валюаций: значения, вычеты, огрубление, валюация Гаусса, целые модели и покрытия
"""
from fractions import Fraction

import pytest
import sympy

from src.kernel.core.errors import NonReducedFiberError, UnsupportedError, UsageError
from src.kernel.corpoid.base_field import BaseField
from src.kernel.corpoid.corpoid import Corpoid
from src.kernel.corpoid.polynomial import GradedPolynomialRing
from src.kernel.degree.value_groups import LexValue
from src.kernel.ideal.graded_ideal import GradedIdeal
from src.kernel.valuation.chain import HeightChain
from src.kernel.valuation.cover import fiber_splitting_cover
from src.kernel.valuation.flatness import IntegralModel, is_flat_module, torsion_witness
from src.kernel.valuation.gauss import gauss_extend
from src.kernel.valuation.residue import residue_corpoid, tilde
from src.kernel.valuation.spv import integrality_witness_check, spv_membership
from src.kernel.valuation.valuation import GradedValuation, ValuationAnnuloid, compose

t, t1, t2, x, y, T = sympy.symbols("t t1 t2 x y T")


@pytest.fixture
def qt(rationals):
    """Фикстура: корпоид Q(t) без сечений"""
    return Corpoid.trivial(BaseField.function_field(rationals, ["t"]))


@pytest.fixture
def tadic(qt):
    """Фикстура: t-адическая валюация |t| = 1/2"""
    return GradedValuation.tadic(qt, "t", Fraction(1, 2))


@pytest.fixture
def gauss(tadic, qt):
    """Фикстура: валюация Гаусса на Q(t)[T] с γ = 1/2"""
    ring = GradedPolynomialRing(qt, [("T", qt.group.one())])
    return gauss_extend(tadic, ring, {"T": Fraction(1, 2)})


class TestFieldValues:
    def test_tadic_values(self, tadic):
        """Тест: |t^2 + t^3| = |t|^2, |1/t| = 2, |0| = None"""
        assert tadic.field_value(t ** 2 + t ** 3) == tadic.radius ** 2
        assert tadic.field_value(1 / t) == tadic.radius ** -1
        assert tadic.field_value(0) is None

    def test_padic_values(self, rationals):
        """Тест: 2-адические значения и вычеты"""
        v = GradedValuation.padic(Corpoid.trivial(rationals), 2)
        assert v.field_value(12) == v.radius ** 2
        assert v.field_value(sympy.Rational(3, 4)) == v.radius ** -2
        assert v.residue_field() == BaseField.prime(2)
        assert v.field_residue(12) == 1

    def test_lex_values(self, rationals):
        """Тест: |t1| ≪ |t2|, поэтому |t1 + t2| = |t2|"""
        corpoid = Corpoid.trivial(BaseField.function_field(rationals, ["t1", "t2"]))
        v = GradedValuation.lex(corpoid, 2)
        assert v.field_value(t1 + t2) == LexValue(2, (Fraction(0), Fraction(1)))
        assert v.field_value(t1) < v.field_value(t2)

    def test_invalid_constructions(self, qt, gf3):
        """Тест: ограничения фабрик валюаций"""
        with pytest.raises(UsageError):
            GradedValuation.tadic(qt, "t", Fraction(2))
        with pytest.raises(UsageError):
            GradedValuation.tadic(qt, "s", Fraction(1, 2))
        with pytest.raises(UnsupportedError):
            GradedValuation.padic(Corpoid.trivial(gf3), 3)
        with pytest.raises(UsageError):
            GradedValuation.lex(qt, 2)

    def test_annuloid(self, tadic, qt):
        """Тест: F°, F°° и единицы"""
        annuloid = ValuationAnnuloid(tadic)
        assert annuloid.contains(qt.element(t))
        assert annuloid.is_maximal_ideal_member(qt.element(t))
        assert annuloid.is_unit(qt.element(1 + t))
        assert not annuloid.contains(qt.element(1 / t))


class TestResidues:
    def test_residue_corpoid(self, tadic, qt):
        """Тест: остаточный корпоид t-адической валюации"""
        assert residue_corpoid(tadic).describe() == "split(Q, τ:(1, 2^(-1)))"
        assert residue_corpoid(GradedValuation.trivial(qt)).describe() == "split(Q(t))"

    def test_tilde(self, tadic, qt):
        """Тест: вычет 3t^2 — (3; 1, |t|^2)"""
        residue = tilde(tadic, qt.element(3 * t ** 2))
        assert residue.coefficient == 3
        assert residue.value == tadic.radius ** 2
        with pytest.raises(UsageError):
            tilde(tadic, qt.zero())

    def test_coarsening(self, rationals):
        """Тест: огрубление lex по выпуклой подгруппе забывает t2"""
        corpoid = Corpoid.trivial(BaseField.function_field(rationals, ["t1", "t2"]))
        v = GradedValuation.lex(corpoid, 2)
        coarse = compose(v, v.convex_subgroup(1))
        assert coarse.height == 1
        assert coarse.residue_height == 1
        assert coarse.field_value(t2).is_one()
        assert coarse.field_value(t1) < coarse.one()


class TestGaussValuation:
    def test_evaluate(self, gauss):
        """Тест: |T + t| = max(γ, |t|) = 1/2, |T + 1| = 1"""
        assert gauss.evaluate_expr(T + t) == gauss.group.from_rational(Fraction(1, 2))
        assert gauss.evaluate_expr(T + 1).is_one()

    def test_reduction(self, gauss):
        """Тест: вычет T + t — T~ + 1"""
        residue, value = gauss.reduction(gauss.ring.from_expr(T + t))
        assert residue == sympy.Symbol("T~") + 1
        assert value == gauss.group.from_rational(Fraction(1, 2))

    def test_residue_corpoid(self, gauss):
        """Тест: сечение τ и переменная T~ бистепени (1, 1/2)"""
        assert gauss.residue_corpoid().describe() == "split(Q, τ:(1, 2^(-1)), T~:(1, 2^(-1)))"

    def test_missing_radius(self, tadic, qt):
        """Тест: γ задаётся для каждой переменной"""
        ring = GradedPolynomialRing(qt, [("T", qt.group.one()), ("U", qt.group.one())])
        with pytest.raises(UsageError):
            gauss_extend(tadic, ring, {"T": Fraction(1, 2)})

    def test_spv_membership(self, gauss):
        """Тест: |tT| ≤ 1, |T/t| = 1, |T/t^2| = 2"""
        assert spv_membership(gauss, [t * T, T / t])
        assert not spv_membership(gauss, [T / t ** 2])

    def test_integrality_certificate(self, gauss):
        """Тест: T цел над кольцом Q[T]/(T^2 - T)"""
        ideal = GradedIdeal.from_exprs(gauss.ring, [T ** 2 - T])
        assert integrality_witness_check(T, "z^2 - z", "z", ideal)
        assert not integrality_witness_check(T, "z^2 - z", "z")
        with pytest.raises(UsageError):
            integrality_witness_check(T, "2*z^2 - z", "z")


class TestIntegralModels:
    def test_chain(self, tadic):
        """Тест: цепочка τ0 ⇝ τ1 для валюации высоты 1"""
        chain = HeightChain(tadic)
        assert len(chain) == 2
        assert repr(chain) == "τ0 ⇝ τ1"
        assert chain.contains(1, t)
        assert not chain.contains(0, t)
        assert not chain.contains(1, 1 + t)

    def test_flat_model(self, tadic):
        """Тест: F°[x, y]/(xy - t) плоско"""
        model = IntegralModel(tadic, ["x", "y"], [x * y - t])
        assert is_flat_module(model)
        assert torsion_witness(model) is None

    def test_torsion(self, tadic):
        """Тест: F°[x]/(tx) имеет кручение x"""
        model = IntegralModel(tadic, ["x"], [t * x])
        assert not is_flat_module(model)
        assert torsion_witness(model) == x

    def test_non_integral_relator(self, tadic):
        """Тест: коэффициенты соотношений лежат в F°"""
        with pytest.raises(UsageError):
            IntegralModel(tadic, ["x"], [x - 1 / t])

    def test_splitting_cover(self, tadic):
        """Тест: F°[x]/(x^2 - x) покрывается двумя открытыми, по компоненте на каждом слое"""
        cover = fiber_splitting_cover(IntegralModel(tadic, ["x"], [x ** 2 - x]))
        assert len(cover) == 2
        assert cover.components == [("τ0", 2), ("τ1", 2)]

    @pytest.mark.parametrize(
        "variables, relators, opens",
        [
            (["x"], [x ** 2 - x], 2),
            (["x", "y"], [x * y - t1], 1),
        ],
    )
    def test_splitting_cover_height_two(self, rationals, variables, relators, opens):
        """Тест: покрытие над цепочкой τ0 ⇝ τ1 ⇝ τ2 лексикографической валюации высоты 2"""
        corpoid = Corpoid.trivial(BaseField.function_field(rationals, ["t1", "t2"]))
        model = IntegralModel(GradedValuation.lex(corpoid, 2), variables, relators)
        cover = fiber_splitting_cover(model)
        assert len(cover) == opens
        assert cover.components == [(f"τ{i}", opens) for i in range(3)]

    def test_non_reduced_fiber(self, tadic):
        """Тест: неприведённый слой даёт свидетеля-точку"""
        with pytest.raises(NonReducedFiberError) as exc:
            fiber_splitting_cover(IntegralModel(tadic, ["x"], [x ** 2]))
        assert exc.value.prime == "τ0"

    def test_cover_requires_flatness(self, tadic):
        """Тест: покрытие строится только для плоских моделей"""
        with pytest.raises(UsageError):
            fiber_splitting_cover(IntegralModel(tadic, ["x"], [t * x]))
