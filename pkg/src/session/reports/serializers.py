# src/session/reports/serializers.py
# Все точные значения (степени, многочлены, идеалы) сериализуются строками.
from typing import Optional, Sequence

from src.kernel.ideal.graded_ideal import GradedIdeal, groebner
from src.kernel.ideal.spectrum import FiniteSpectrum
from src.kernel.sympathique.formal_model import FormalModel
from src.kernel.sympathique.report import ConditionResult, SympathiqueReport
from src.kernel.tate.newton import OracleResult
from src.kernel.tate.schauder import SchauderElement
from src.kernel.valuation.cover import OpenCover


def serialize_value(value) -> Optional[str]:
    return None if value is None else str(value)


def serialize_ideal(ideal: GradedIdeal) -> dict:
    return {
        "variables": [str(s) for s in ideal.ring.symbols],
        "ideal": ideal.describe(),
        "groebner": [str(g) for g in groebner(ideal)],
    }


def serialize_spectrum(spectrum: FiniteSpectrum) -> dict:
    return {
        "points": [
            {"label": p.label, "prime": p.prime.describe(), "dimension": p.dimension, "closed": p.closed}
            for p in spectrum.points
        ],
        "specializations": [[spectrum.points[i].label, spectrum.points[j].label] for i, j in spectrum.order],
    }


def serialize_components(idempotents) -> list:
    return [str(e.as_expr()) for e in idempotents]


def serialize_cover(cover: Optional[OpenCover]) -> Optional[dict]:
    if cover is None:
        return None
    return {
        "opens": [
            {
                "generator": str(o.generator),
                "fibers": [{"point": c.point, "status": c.status} for c in o.checks],
            }
            for o in cover.opens
        ],
        "components": [{"point": point, "count": count} for point, count in cover.components],
    }


def serialize_condition(condition: ConditionResult) -> dict:
    return {
        "number": condition.number,
        "name": condition.name,
        "verdict": condition.verdict.value,
        "witness": condition.witness,
        "detail": condition.detail,
    }


def serialize_sympathique(report: SympathiqueReport) -> dict:
    return {
        "presentation": report.presentation,
        "overall": report.overall.value,
        "conditions": [serialize_condition(c) for c in report.conditions],
        "cover": serialize_cover(report.cover),
    }


def serialize_oracle(result: OracleResult) -> dict:
    return {
        "distinguished": result.distinguished,
        "annulus": result.annulus,
        "comparisons": [
            {"element": element, "quotient_norm": serialize_value(q), "spectral_norm": serialize_value(s)}
            for element, q, s in result.comparisons
        ],
    }


def serialize_schauder(elements: Sequence[SchauderElement]) -> list:
    return [{"element": str(e.expr), "norm": str(e.norm)} for e in elements]


def serialize_formal_model(model: FormalModel) -> dict:
    return {
        "model": str(model.model),
        "killers": [str(b) for b in model.killers],
        "flat": model.flat,
        "generic_equal": model.generic_equal,
        "special_fiber_ok": model.special_fiber_ok,
    }


def serialize_error(error: Exception) -> dict:
    return {"type": type(error).__name__, "message": str(error)}
