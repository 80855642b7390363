"""
Свойства алгебр Тейта на случайных элементах с фиксированным зерном
"""
import sympy

from src.kernel.tate.division import divide, mutually_generate, perturb_generators
from src.kernel.tate.scalar_extension import GaussValuedField, extend_scalars_gauss
from src.kernel.tate.series import TateRing

T, S = sympy.symbols("T S")


def _nonzero_pairs(ring, rng, count):
    produced = 0
    while produced < count:
        f = ring.random_series(rng)
        g = ring.random_series(rng)
        if f.is_zero or g.is_zero:
            continue
        produced += 1
        yield f, g


class TestGaussMultiplicativity:
    def test_product_norm(self, valued_field, rng):
        """Тест: ‖fg‖ = ‖f‖·‖g‖ на 500 случайных парах, радиусы (1, 2^(1/2))"""
        ring = TateRing(valued_field, [("T", "1"), ("U", "2^(1/2)")])
        for f, g in _nonzero_pairs(ring, rng, 500):
            assert (f * g).gauss_norm() == f.gauss_norm() * g.gauss_norm()


class TestStrongDivisionContract:
    def test_multiples_divide_with_norm_control(self, trivial_q, q2, rng):
        """Тест: f = c·g делится на g без остатка, ‖b‖·‖g‖ ≤ ‖f‖ (100 случаев на семейство)"""
        families = [
            (TateRing(trivial_q, [("T", "1")]), T - 1),
            (TateRing(q2, [("T", "1")]), T - 2),
            (TateRing(q2, [("T", "1/2")]), T ** 2 + 2 * T),
        ]
        for ring, generator in families:
            g = ring.from_expr(generator)
            checked = 0
            while checked < 100:
                c = ring.random_series(rng)
                if c.is_zero:
                    continue
                result = divide(c * g, [g])
                assert result.in_ideal
                assert result.contract_ok
                assert result.certificate_ok()
                checked += 1

    def test_small_perturbations_generate_same_ideal(self, q2, rng):
        """Тест: T и T + 2c·T порождают друг друга (50 возмущений)"""
        ring = TateRing(q2, [("T", "1")])
        g = [ring.from_expr(T)]
        for _ in range(50):
            c = q2.random_element(rng)
            perturbed = perturb_generators(g, [ring.from_expr(2 * c * T)])
            assert mutually_generate(g, perturbed.generators)


class TestScalarExtensionNorms:
    def test_norms_preserved(self, trivial_q, q2, rng):
        """Тест: расширение k(S/3)^ сохраняет нормы 200 случайных рядов"""
        for field in (trivial_q, q2):
            ring = TateRing(field, [("T", "1")])
            for _ in range(100):
                f = ring.random_series(rng)
                if f.is_zero:
                    continue
                assert extend_scalars_gauss(f, "S", "3").gauss_norm() == f.gauss_norm()

    def test_value_monoid_gains_radius(self, q2):
        """Тест: |S^k| = 3^k, новые значения вне |Q_2^×|"""
        field = GaussValuedField(q2, "S", "3")
        for k in range(4):
            assert field.norm(field.from_expr(S ** k)) == field.radius ** k

    def test_scalar_variable_scales_norm(self, trivial_q, q2, rng):
        """Тест: ‖S·a‖ = 3·‖a‖ после расширения k(S/3)^ (200 случайных рядов)"""
        for field in (trivial_q, q2):
            ring = TateRing(field, [("T", "1")])
            for _ in range(100):
                f = ring.random_series(rng)
                if f.is_zero:
                    continue
                extended = extend_scalars_gauss(f, "S", "3")
                target = extended.ring
                s = target.constant(target.field.from_expr(S))
                radius = target.group.coerce(target.field.radius)
                assert (s * extended).gauss_norm() == radius * extended.gauss_norm()
