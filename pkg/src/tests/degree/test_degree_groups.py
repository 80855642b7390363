"""
Тесты групп степеней: точные сравнения, подгруппы, порядок по модулю подгруппы, свобода семейств
"""
from fractions import Fraction

import pytest

from src.kernel.core.enums import Ordering
from src.kernel.core.errors import UsageError
from src.kernel.degree.groups import MultRealGroup, Subgroup, compare, is_free_family, order_modulo
from src.kernel.degree.value_groups import (
    LexValueGroup,
    RealValueGroup,
    coarsen,
    value_compare,
    value_max,
    value_mul,
)


class TestDegreeElement:
    def test_exact_comparison(self, group23):
        """Тест: 2^(1/2) < 3^(1/3), так как 2^3 < 3^2"""
        a = group23.parse("2^(1/2)")
        b = group23.parse("3^(1/3)")
        assert a < b
        assert compare(b, a) is Ordering.GREATER
        assert compare(a, a) is Ordering.EQUAL

    def test_equality_by_value(self):
        """Тест: равенство по значению, а не по вектору показателей"""
        group = MultRealGroup([4, 2])
        assert group.element([1, 0]) == group.element([0, 2])
        assert hash(group.element([1, 0])) == hash(group.element([0, 2]))

    def test_arithmetic(self, group23):
        """Тест: умножение, деление, степени и единица"""
        two, three = group23.generator(0), group23.generator(1)
        assert (two * three) / three == two
        assert (two / two).is_one()
        assert two ** Fraction(1, 2) * two ** Fraction(1, 2) == two
        assert two.inverse() == group23.parse("1/2")

    def test_string_form(self, group23):
        """Тест: печать через простые множители"""
        assert str(group23.parse("2^(1/2)*3^(-1)")) == "2^(1/2)*3^(-1)"
        assert str(group23.parse("1/2")) == "2^(-1)"
        assert str(group23.one()) == "1"

    @pytest.mark.parametrize("text", ["2^x", "0", "-2", "2^(1/2"])
    def test_invalid_literal(self, group23, text):
        """Тест: некорректные литералы степеней"""
        with pytest.raises(UsageError):
            group23.parse(text)

    def test_different_groups(self, group23):
        """Тест: сравнение элементов разных групп запрещено"""
        with pytest.raises(UsageError):
            compare(group23.generator(0), MultRealGroup([2]).generator(0))

    def test_coerce_outside_group(self, group23):
        """Тест: 3 не лежит в Q-оболочке <2>"""
        with pytest.raises(UsageError):
            MultRealGroup([2]).coerce(group23.parse("3"))

    def test_non_positive_generator(self):
        """Тест: образующие группы положительны"""
        with pytest.raises(UsageError):
            MultRealGroup([2, 0])


class TestSubgroup:
    def test_order_modulo(self, group23):
        """Тест: порядок элемента по модулю подгруппы <4>"""
        H = Subgroup(group23, [group23.parse("4")])
        assert order_modulo(group23.parse("16"), H) == 1
        assert order_modulo(group23.parse("2"), H) == 2
        assert order_modulo(group23.parse("2^(1/3)"), H) == 6
        assert order_modulo(group23.parse("3"), H) is None

    def test_contains(self, group23):
        """Тест: принадлежность подгруппе и её Q-оболочке"""
        H = Subgroup(group23, [group23.parse("4")])
        assert H.contains(group23.parse("1/16"))
        assert not H.contains(group23.parse("2"))
        assert H.contains_rationally(group23.parse("2"))
        assert not H.contains_rationally(group23.parse("6"))

    def test_rank(self, group23):
        """Тест: ранг подгруппы, порождённой зависимыми элементами"""
        H = Subgroup(group23, [group23.parse("2"), group23.parse("4"), group23.parse("6")])
        assert H.rank == 2
        assert Subgroup.trivial(group23).rank == 0
        assert Subgroup.whole(group23).rank == 2

    def test_free_family(self, group23):
        """Тест: Q-независимость по модулю подгруппы"""
        trivial = Subgroup.trivial(group23)
        H = Subgroup(group23, [group23.parse("2")])
        assert is_free_family([group23.parse("2"), group23.parse("3")], trivial)
        assert not is_free_family([group23.parse("2"), group23.parse("4")], trivial)
        assert is_free_family([group23.parse("3")], H)
        assert not is_free_family([group23.parse("8")], H)
        assert is_free_family([], H)


class TestValueGroups:
    def test_lex_order(self):
        """Тест: ε1 ≪ ε2 ≪ 1 в лексикографической группе"""
        group = LexValueGroup(2)
        e1, e2 = group.uniformizer(0), group.uniformizer(1)
        assert e1 < e2 < group.one()
        assert e1 < e2 ** 100

    def test_lex_convex_subgroups(self):
        """Тест: выпуклые подгруппы — лексикографические суффиксы"""
        group = LexValueGroup(2)
        e1, e2 = group.uniformizer(0), group.uniformizer(1)
        assert group.convex_from_generators([e2]).start == 1
        with pytest.raises(UsageError):
            group.convex_from_generators([e1])
        assert coarsen(e1 * e2, group.convex_subgroup(1)).coords == (Fraction(1),)

    def test_real_convex_subgroups(self, group23):
        """Тест: в архимедовой группе выпуклы только {1} и вся группа"""
        values = RealValueGroup(group23)
        assert values.convex_from_generators([]).is_trivial
        assert not values.convex_from_generators([group23.parse("2"), group23.parse("3")]).is_trivial
        with pytest.raises(UsageError):
            values.convex_from_generators([group23.parse("2")])

    def test_zero_value(self, group23):
        """Тест: None как |0| меньше любого значения"""
        one = group23.one()
        assert value_compare(None, one) is Ordering.LESS
        assert value_compare(None, None) is Ordering.EQUAL
        assert value_max(None, one) == one
        assert value_mul(None, one) is None
