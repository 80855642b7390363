"""
Тесты базовых полей, расщеплённых корпоидов и градуированных колец многочленов
"""
import pytest
import sympy

from src.kernel.core.enums import FieldKind
from src.kernel.core.errors import UnsupportedError, UsageError
from src.kernel.corpoid.base_field import BaseField
from src.kernel.corpoid.corpoid import Corpoid
from src.kernel.corpoid.polynomial import GradedPolynomialRing
from src.kernel.corpoid.translation import to_degree_one

T, U, t = sympy.symbols("T U t")


@pytest.fixture
def corpoid2(rationals, group23):
    """Фикстура: корпоид над Q с одним сечением t степени 2"""
    return Corpoid.split(rationals, group23, [group23.parse("2")])


@pytest.fixture
def ring2(corpoid2, group23):
    """Фикстура: Q[t^±][2\\T, 3\\U]"""
    return GradedPolynomialRing(corpoid2, [("T", group23.parse("2")), ("U", group23.parse("3"))])


class TestBaseField:
    def test_prime_field_arithmetic(self, gf3):
        """Тест: арифметика GF(3) по модулю 3"""
        assert gf3.inverse(2) == 2
        assert gf3.add(2, 2) == 1
        assert gf3.is_zero(3)
        assert list(gf3.elements()) == [0, 1, 2]

    def test_finite_field_of_order_four(self):
        """Тест: GF(4) строится неприводимым a^2 + a + 1"""
        field = BaseField.finite(4)
        a = sympy.Symbol("a")
        assert field.kind is FieldKind.FINITE
        assert field.relations == (a ** 2 + a + 1,)
        assert field.order == 4
        assert len(list(field.elements())) == 4
        assert field.is_zero(field.mul(a, a) - a - 1)

    def test_invalid_orders(self):
        """Тест: порядок поля — степень простого"""
        with pytest.raises(UsageError):
            BaseField.finite(6)
        with pytest.raises(UsageError):
            BaseField.prime(9)

    def test_function_field(self, rationals):
        """Тест: Q(t) бесконечно, дроби сокращаются"""
        field = BaseField.function_field(rationals, ["t"])
        assert not field.is_finite
        assert field.is_perfect
        assert field.normalize((t ** 2 - 1) / (t - 1)) == t + 1

    def test_imperfect_function_field(self, gf3):
        """Тест: GF(3)(t) не совершенно"""
        assert not BaseField.function_field(gf3, ["t"]).is_perfect
        with pytest.raises(UnsupportedError):
            BaseField.function_field(BaseField.finite(9), ["t"])


class TestCorpoid:
    def test_split_sections(self, corpoid2, group23):
        """Тест: одно сечение t степени 2"""
        assert corpoid2.section_symbols == (t,)
        assert corpoid2.section_degrees == (group23.parse("2"),)
        assert corpoid2.contains_degree(group23.parse("1/4"))
        assert not corpoid2.contains_degree(group23.parse("3"))
        assert not corpoid2.contains_degree(group23.parse("2^(1/2)"))

    def test_homogeneous_arithmetic(self, corpoid2, group23):
        """Тест: степени перемножаются, обратный элемент имеет обратную степень"""
        section = corpoid2.section(0)
        assert (section * section).degree == group23.parse("4")
        assert (section ** -1).degree == group23.parse("1/2")
        assert section.inverse() * section == corpoid2.one()

    def test_addition_requires_same_degree(self, corpoid2):
        """Тест: сложение элементов разных степеней запрещено"""
        with pytest.raises(UsageError):
            corpoid2.one() + corpoid2.section(0)

    def test_graded_zero(self, corpoid2, group23):
        """Тест: ноль хранит свою степень"""
        zero = corpoid2.zero(group23.parse("2"))
        assert zero.is_zero
        assert zero.degree == group23.parse("2")
        assert repr(zero) == "0^2"

    def test_from_expr(self, corpoid2, group23):
        """Тест: c·t^α задаёт однородный элемент, смесь степеней — ошибка"""
        element = corpoid2.from_expr(3 * t ** 2)
        assert element.degree == group23.parse("4")
        assert element.coefficient == 3
        with pytest.raises(UsageError):
            corpoid2.from_expr(t + 1)

    def test_dependent_sections(self, rationals, group23):
        """Тест: степени сечений обязаны быть свободны"""
        with pytest.raises(UsageError):
            Corpoid(rationals, group23, [("a", group23.parse("2")), ("b", group23.parse("4"))])

    def test_trivial_corpoid(self, gf3):
        """Тест: тривиальный корпоид содержит только степень 1"""
        corpoid = Corpoid.trivial(gf3)
        assert corpoid.coordinates(corpoid.group.one()) == ()
        assert repr(corpoid) == "split(GF(3))"


class TestGradedPolynomialRing:
    def test_homogeneous_polynomial(self, ring2, group23):
        """Тест: T^2 - t·T однороден степени 4"""
        p = ring2.from_expr(T ** 2 - t * T)
        assert p.degree == group23.parse("4")
        assert ring2.from_expr(T * U).degree == group23.parse("6")

    def test_inhomogeneous_polynomial(self, ring2):
        """Тест: T + 1 неоднороден"""
        with pytest.raises(UsageError):
            ring2.from_expr(T + 1)

    def test_product_and_substitution(self, ring2):
        """Тест: умножение и подстановка сохраняют однородность"""
        p = ring2.variable("T") * ring2.variable("U")
        q = p.substitute({T: ring2.from_expr(t)})
        assert q.to_expr() == t * U
        assert q.degree == p.degree
        with pytest.raises(UsageError):
            p.substitute({T: ring2.from_expr(t * T)})

    def test_zero_keeps_degree(self, ring2, group23):
        """Тест: ноль заданной степени складывается с многочленом этой степени"""
        zero = ring2.zero(group23.parse("2"))
        assert (zero + ring2.variable("T")) == ring2.variable("T")

    def test_variable_clash(self, corpoid2, group23):
        """Тест: имя переменной не может совпадать с сечением"""
        with pytest.raises(UsageError):
            GradedPolynomialRing(corpoid2, [("t", group23.parse("2"))])

    def test_laurent_ring(self, corpoid2, group23):
        """Тест: кольцо Лорана добавляет обратную переменную и соотношение"""
        ring = GradedPolynomialRing.laurent(corpoid2, [("T", group23.parse("3"))])
        inverse = sympy.Symbol("T_inv")
        assert ring.symbols == (T, inverse)
        assert ring.degree_of(inverse) == group23.parse("1/3")
        assert ring.relations() == [T * inverse - 1]


class TestCorpoidAxioms:
    @staticmethod
    def _random_element(corpoid, rng, exponent=None):
        k = rng.randint(-3, 3) if exponent is None else exponent
        coefficient = sympy.Rational(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 5))
        return corpoid.from_expr(coefficient * t ** k)

    def test_multiplication(self, corpoid2, rng):
        """Тест: умножение ассоциативно и коммутативно, 1 нейтральна, ненулевые элементы обратимы (300 троек)"""
        one = corpoid2.one()
        for _ in range(300):
            x, y, z = (self._random_element(corpoid2, rng) for _ in range(3))
            assert (x * y) * z == x * (y * z)
            assert x * y == y * x
            assert x * one == x
            assert (x * y).degree == x.degree * y.degree
            assert x * x.inverse() == one

    def test_distributivity_within_degree(self, corpoid2, rng):
        """Тест: x·(y + z) = x·y + x·z для y, z одной степени (300 троек)"""
        for _ in range(300):
            x = self._random_element(corpoid2, rng)
            k = rng.randint(-3, 3)
            y, z = self._random_element(corpoid2, rng, k), self._random_element(corpoid2, rng, k)
            assert x * (y + z) == x * y + x * z
            assert (y - y).is_zero


class TestDegreeOneImage:
    def test_variable_of_degree_two(self, corpoid2, group23):
        """Тест: T степени 2 переходит в T·U и восстанавливается"""
        ring = GradedPolynomialRing(corpoid2, [("T", group23.parse("2"))])
        image, translation = to_degree_one(ring.variable("T"))
        assert image == T * sympy.Symbol("U")
        assert translation.untranslate(image, group23.parse("2")) == ring.variable("T")

    def test_round_trip_with_sections(self, corpoid2, group23):
        """Тест: образ T^2 - t·T равен U^2·(T^2 - T), обратный перевод возвращает многочлен"""
        ring = GradedPolynomialRing(corpoid2, [("T", group23.parse("2"))])
        p = ring.from_expr(T ** 2 - t * T)
        image, translation = to_degree_one(p)
        assert sympy.expand(image - sympy.Symbol("U") ** 2 * (T ** 2 - T)) == 0
        assert translation.untranslate(image, p.degree) == p
        with pytest.raises(UsageError):
            translation.untranslate(image, group23.parse("2"))
