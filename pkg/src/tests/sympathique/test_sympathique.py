"""
Тесты относительных представлений и проверки шести условий Γ-симпатичности
"""
import itertools
import json
from fractions import Fraction

import pytest
import sympy

from src.kernel.core.enums import Verdict
from src.kernel.core.errors import UnsupportedError, UsageError
from src.kernel.corpoid.base_field import BaseField
from src.kernel.sympathique.conditions import check_fiber_norms, check_geom_irreducible_components, check_radii
from src.kernel.sympathique.formal_model import build_formal_model
from src.kernel.sympathique.presentation import RelativePresentation
from src.kernel.sympathique.report import ConditionResult, SympathiqueReport
from src.kernel.sympathique.universal import check_universally_distinguished
from src.kernel.sympathique.verifier import SympathiqueVerifier
from src.kernel.tate.laurent import LaurentField
from src.kernel.tate.presentation import TatePresentation
from src.kernel.tate.series import TateRing
from src.kernel.tate.valued_field import PadicField
from src.session.reports.serializers import serialize_sympathique

S, T, T1, T2 = sympy.symbols("S T T1 T2")
FIBERS = [{"S": 0}, {"S": 1}]


@pytest.fixture
def disc(trivial_q):
    """Фикстура: A = k{S} без соотношений"""
    return TatePresentation(TateRing(trivial_q, [("S", "1")]), [])


def _relative(base, relator, fibers=FIBERS, name="B"):
    return RelativePresentation(base, [("T", "1")], [relator], fibers, name)


class TestRelativePresentation:
    def test_relators_reduced_modulo_base(self, trivial_q):
        """Тест: T - S^2 приводится к T - S по модулю S^2 - S"""
        base = TatePresentation.from_exprs(TateRing(trivial_q, [("S", "1")]), [S ** 2 - S])
        relative = _relative(base, T - S ** 2, fibers=[])
        assert relative.relators[0] == relative.total_ring.from_expr(T - S)

    def test_fiber_restriction(self, disc):
        """Тест: ограничение T^2 - S на слой S = 1"""
        relative = _relative(disc, T ** 2 - S)
        fiber = relative.fiber(relative.points[1])
        assert relative.points[1].label == "S=1"
        assert fiber.relators[0] == relative.relative_ring.from_expr(T ** 2 - 1)

    def test_point_must_set_base_variables(self, disc):
        """Тест: точка слоя задаёт ровно переменные базы"""
        with pytest.raises(UsageError):
            _relative(disc, T ** 2 - T, fibers=[{"U": 0}])
        with pytest.raises(UsageError):
            _relative(disc, T ** 2 - T, fibers=[{}])

    def test_point_outside_base(self, trivial_q):
        """Тест: точка S = 0 не лежит на M(k{S}/(S - 1))"""
        base = TatePresentation.from_exprs(TateRing(trivial_q, [("S", "1")]), [S - 1])
        with pytest.raises(UsageError):
            _relative(base, T ** 2 - T, fibers=[{"S": 0}])

    def test_describe(self, disc):
        """Тест: печать относительного представления"""
        assert _relative(disc, T ** 2 - T).describe() == "A{T:1} / (T**2 - T)"


class TestVerifier:
    def test_split_family_is_sympathique(self, disc, settings):
        """Тест: T^2 - T над k{S} удовлетворяет всем шести условиям"""
        report = SympathiqueVerifier(_relative(disc, T ** 2 - T), settings, max_workers=2).run()
        assert [c.number for c in report.conditions] == [1, 2, 3, 4, 5, 6]
        assert report.overall is Verdict.PASS
        assert report.failing() == []
        assert report.cover is not None

    def test_ramified_family_fails_flat_reduced(self, disc, settings):
        """Тест: T^2 - S имеет неприведённый слой над (S), условие (4) нарушено"""
        report = SympathiqueVerifier(_relative(disc, T ** 2 - S, name="C"), settings, max_workers=1).run()
        assert report.overall is Verdict.FAIL
        condition = report.condition(4)
        assert condition.verdict is Verdict.FAIL
        assert condition.witness == "(S)"
        assert report.condition(1).verdict is Verdict.PASS

    @pytest.mark.parametrize("field_name", ["trivial_q", "q2", "f3t"])
    def test_report_is_reproducible(self, field_name, settings, request):
        """Тест: два прогона T^2 - T над k{S} дают побайтно одинаковый JSON-отчёт"""
        field = request.getfixturevalue(field_name)
        texts = []
        for _ in range(2):
            base = TatePresentation(TateRing(field, [("S", "1")]), [])
            report = SympathiqueVerifier(_relative(base, T ** 2 - T), settings, max_workers=2).run()
            assert [c.number for c in report.conditions] == [1, 2, 3, 4, 5, 6]
            assert report.overall is not Verdict.FAIL
            texts.append(json.dumps(serialize_sympathique(report), sort_keys=True, indent=2, ensure_ascii=False))
        assert texts[0] == texts[1]


class TestSingleConditions:
    def test_radius_outside_gamma(self, disc):
        """Тест: радиус 2^(1/2) вне Γ = <2, 3> нарушает условие (1)"""
        relative = RelativePresentation(disc, [("T", "2^(1/2)")], [T ** 2 - T], FIBERS)
        result = check_radii(relative)
        assert result.verdict is Verdict.FAIL
        assert result.witness.startswith("r(T)")

    def test_norm_drops_on_fiber(self, disc, settings):
        """Тест: ‖S·T‖ = 1, но на слое S = 0 ограничение равно нулю: условие (2) нарушено"""
        result = check_fiber_norms(_relative(disc, S * T), settings)
        assert result.verdict is Verdict.FAIL
        assert "S=0" in result.witness

    def test_component_not_geometrically_irreducible(self, settings):
        """Тест: над Q_3 слой T^2 + 1 неприводим над F_3, но распадается над F_9: условие (5) нарушено"""
        base = TatePresentation(TateRing(PadicField(3), [("S", "1")]), [])
        result = check_geom_irreducible_components(_relative(base, T ** 2 + 1), settings)
        assert result.verdict is Verdict.FAIL


class TestReport:
    def test_partial_report_is_inconclusive(self):
        """Тест: отчёт без всех шести условий не может быть PASS"""
        report = SympathiqueReport("B", [ConditionResult(1, "radii", Verdict.PASS)])
        assert report.overall is Verdict.INCONCLUSIVE
        with pytest.raises(KeyError):
            report.condition(6)

    def test_describe_condition(self):
        """Тест: строка условия содержит номер, вердикт и свидетеля"""
        result = ConditionResult(4, "reduction_flat_reduced", Verdict.FAIL, "(S)")
        assert result.describe() == "(4) reduction_flat_reduced: fail [(S)]"

    def test_worse_condition_never_improves_overall(self):
        """Тест: ухудшение вердикта любого условия не улучшает общий вердикт"""
        rank = {Verdict.PASS: 0, Verdict.INCONCLUSIVE: 1, Verdict.FAIL: 2}

        def overall(verdicts):
            return SympathiqueReport("B", [ConditionResult(i + 1, "c", v) for i, v in enumerate(verdicts)]).overall

        for verdicts in itertools.product(list(Verdict), repeat=6):
            before = rank[overall(verdicts)]
            for i, v in enumerate(verdicts):
                for worse in (w for w in Verdict if rank[w] > rank[v]):
                    changed = verdicts[:i] + (worse,) + verdicts[i + 1:]
                    assert rank[overall(changed)] >= before


class TestUniversalDistinguished:
    def test_split_reduction_passes(self, trivial_q):
        """Тест: компоненты редукции T^2 - T геометрически целостны"""
        presentation = TatePresentation.from_exprs(TateRing(trivial_q, [("T", "1")]), [T ** 2 - T])
        result = check_universally_distinguished(presentation)
        assert result.verdict is Verdict.PASS
        assert result.number is None

    def test_nilpotent_reduction_fails(self, q2):
        """Тест: редукция T^2 - 2 над Q_2 не приведена"""
        presentation = TatePresentation.from_exprs(TateRing(q2, [("T", "1")]), [T ** 2 - 2])
        assert check_universally_distinguished(presentation).verdict is Verdict.FAIL

    def test_annulus_reduction_passes(self, trivial_q):
        """Тест: редукция S·T - 1 геометрически целостна"""
        presentation = TatePresentation.from_exprs(TateRing(trivial_q, [("S", "1"), ("T", "1")]), [S * T - 1])
        assert check_universally_distinguished(presentation).verdict is Verdict.PASS

    def test_split_component_needs_witness(self):
        """Тест: над Q_3 редукция T^2 + 1 распадается над F_9; без свидетеля ответа нет, свидетель 1 подходит"""
        ring = TateRing(PadicField(3), [("T", "1")])
        presentation = TatePresentation.from_exprs(ring, [T ** 2 + 1])
        assert check_universally_distinguished(presentation).verdict is Verdict.INCONCLUSIVE
        result = check_universally_distinguished(presentation, witnesses=[ring.one()])
        assert result.verdict is Verdict.PASS
        assert result.detail.startswith("(β)")


class TestFormalModel:
    def test_torsion_killer(self):
        """Тест: модель F_3[t][T]/(tT) дополняется убийцей кручения T"""
        field = LaurentField(BaseField.prime(3), Fraction(1, 2), 12)
        presentation = TatePresentation.from_exprs(TateRing(field, [("T", "1")]), [sympy.Symbol("t") * T])
        model = build_formal_model(presentation)
        assert model.killers == [T]
        assert model.flat
        assert model.generic_equal
        assert model.verified

    def test_killer_of_second_variable(self, f3t):
        """Тест: модель F_3[t][T1, T2]/(T1, tT2) дополняется убийцей T2"""
        ring = TateRing(f3t, [("T1", "1"), ("T2", "1")])
        presentation = TatePresentation.from_exprs(ring, [T1, sympy.Symbol("t") * T2])
        model = build_formal_model(presentation)
        assert model.killers == [T2]
        assert model.verified

    def test_requires_laurent_field(self, trivial_q):
        """Тест: формальная модель строится только над F_p((t))"""
        presentation = TatePresentation.from_exprs(TateRing(trivial_q, [("T", "1")]), [T ** 2 - T])
        with pytest.raises(UnsupportedError):
            build_formal_model(presentation)
