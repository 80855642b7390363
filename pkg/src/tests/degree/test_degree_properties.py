"""
Свойства порядка на группе степеней <2, 3> на случайных элементах
"""
from fractions import Fraction

from src.kernel.core.enums import Ordering
from src.kernel.degree.groups import compare

REVERSED = {Ordering.LESS: Ordering.GREATER, Ordering.EQUAL: Ordering.EQUAL, Ordering.GREATER: Ordering.LESS}


def _random_degree(group, rng):
    return group.element([Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in group.generators])


class TestCompareOrder:
    def test_transitive(self, group23, rng):
        """Тест: a ≤ b ≤ c влечёт a ≤ c, строгость сохраняется (500 троек)"""
        for _ in range(500):
            a, b, c = (_random_degree(group23, rng) for _ in range(3))
            ab, bc, ac = compare(a, b), compare(b, c), compare(a, c)
            if ab is not Ordering.GREATER and bc is not Ordering.GREATER:
                assert ac is not Ordering.GREATER
                if Ordering.LESS in (ab, bc):
                    assert ac is Ordering.LESS

    def test_antisymmetric(self, group23, rng):
        """Тест: compare(b, a) обратно compare(a, b), равенство только для равных элементов"""
        for _ in range(500):
            a, b = _random_degree(group23, rng), _random_degree(group23, rng)
            assert compare(b, a) is REVERSED[compare(a, b)]
            assert (compare(a, b) is Ordering.EQUAL) == (a == b)

    def test_compatible_with_multiplication(self, group23, rng):
        """Тест: a < b ⟺ a·c < b·c (500 троек)"""
        for _ in range(500):
            a, b, c = (_random_degree(group23, rng) for _ in range(3))
            assert compare(a * c, b * c) is compare(a, b)
