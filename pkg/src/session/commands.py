"""
Исполнение команд сессии над объектами ядра.

Каждый обработчик возвращает Outcome: статус записи, результат для отчёта
и имя оракула, вычислившего ответ.
"""
from dataclasses import dataclass
from typing import Callable, Dict

from src.kernel.core.enums import RecordStatus, Verdict
from src.kernel.core.errors import UnsupportedError
from src.kernel.core.settings import KernelSettings
from src.kernel.ideal.components import connected_components
from src.kernel.ideal.geometric import is_geometrically_irreducible, is_geometrically_reduced
from src.kernel.ideal.graded_ideal import dimension_over, is_reduced
from src.kernel.ideal.spectrum import spectrum
from src.kernel.sympathique.conditions import build_splitting_cover
from src.kernel.sympathique.fibration import fiber_extensions
from src.kernel.sympathique.formal_model import build_formal_model
from src.kernel.sympathique.presentation import RelativePresentation
from src.kernel.sympathique.universal import check_universally_distinguished
from src.kernel.sympathique.verifier import SympathiqueVerifier
from src.kernel.tate.newton import oracle_is_distinguished
from src.kernel.tate.presentation import TatePresentation, is_distinguished, is_strongly_generating, reduce_presentation
from src.kernel.tate.schauder import residues_independent, take_basis
from src.kernel.valuation.cover import fiber_splitting_cover
from src.kernel.valuation.flatness import is_flat_module, torsion_witness
from src.kernel.valuation.gauss import GaussValuation
from src.kernel.valuation.residue import residue_corpoid
from src.session import nodes
from src.session.builder import SessionBuilder, formula_expr
from src.session.reports.serializers import (
    serialize_components,
    serialize_condition,
    serialize_cover,
    serialize_formal_model,
    serialize_ideal,
    serialize_oracle,
    serialize_schauder,
    serialize_spectrum,
    serialize_sympathique,
)

# Логирование
# ====================================================
from src.utils.logger.logger import get_logger
logger = get_logger(__name__)

_VERDICT_STATUS = {
    Verdict.PASS: RecordStatus.PASS,
    Verdict.FAIL: RecordStatus.FAIL,
    Verdict.INCONCLUSIVE: RecordStatus.INCONCLUSIVE,
}


@dataclass
class Outcome:
    status: RecordStatus
    result: dict
    oracle: str


def command_key(command: nodes.Command) -> str:
    return f"check {command.mode}" if command.verb == "check" else command.verb


def _from_bool(value: bool) -> RecordStatus:
    return RecordStatus.PASS if value else RecordStatus.FAIL


# ====================================================
# reduce / model / basis
# ====================================================
def run_reduce(builder: SessionBuilder, command: nodes.Command, settings: KernelSettings) -> Outcome:
    target = builder.get(command.target)
    if isinstance(target, TatePresentation):
        ideal = reduce_presentation(target)
        return Outcome(RecordStatus.COMPLETE, serialize_ideal(ideal), "tate.reduce_presentation")
    if isinstance(target, GaussValuation):
        return Outcome(RecordStatus.COMPLETE, {"residue": target.residue_corpoid().describe()},
                       "valuation.gauss.residue_corpoid")
    return Outcome(RecordStatus.COMPLETE, {"residue": residue_corpoid(target).describe()},
                   "valuation.residue_corpoid")


def run_model(builder: SessionBuilder, command: nodes.Command, settings: KernelSettings) -> Outcome:
    model = build_formal_model(builder.get(command.target), settings)
    result = serialize_formal_model(model)
    if not model.verified:
        result["witness"] = ", ".join(k for k in ("flat", "generic_equal", "special_fiber_ok") if not result[k])
        return Outcome(RecordStatus.FAIL, result, "sympathique.build_formal_model")
    return Outcome(RecordStatus.COMPLETE, result, "sympathique.build_formal_model")


def run_basis(builder: SessionBuilder, command: nodes.Command, settings: KernelSettings) -> Outcome:
    field = builder.get(command.target)
    elements = take_basis(field, command.radius, command.bound)
    result = {"elements": serialize_schauder(elements), "count": len(elements)}
    try:
        result["residues_independent"] = residues_independent(field, elements)
    except UnsupportedError as e:
        logger.debug(f"🔍 Независимость вычетов не проверена: {e}")
        result["residues_independent"] = None
    return Outcome(RecordStatus.COMPLETE, result, "tate.schauder_basis")


# ====================================================
# cover
# ====================================================
def run_cover(builder: SessionBuilder, command: nodes.Command, settings: KernelSettings) -> Outcome:
    target = builder.get(command.target)
    if isinstance(target, RelativePresentation):
        condition, cover = build_splitting_cover(target, settings)
        result = serialize_condition(condition)
        result["cover"] = serialize_cover(cover)
        return Outcome(_VERDICT_STATUS[condition.verdict], result, "sympathique.build_splitting_cover")
    cover = fiber_splitting_cover(target, settings)
    return Outcome(RecordStatus.COMPLETE, {"cover": serialize_cover(cover)}, "valuation.fiber_splitting_cover")


# ====================================================
# check
# ====================================================
def check_distinguished(builder, command, settings) -> Outcome:
    presentation: TatePresentation = builder.get(command.target)
    distinguished = is_distinguished(presentation, settings)
    result = {"distinguished": distinguished, "reduction": reduce_presentation(presentation).describe()}
    if not distinguished:
        result["witness"] = result["reduction"]
    if len(presentation.ring.symbols) <= 2:
        try:
            oracle = oracle_is_distinguished(presentation)
            result["newton_oracle"] = serialize_oracle(oracle)
            result["oracle_agrees"] = oracle.distinguished == distinguished
        except UnsupportedError as e:
            logger.debug(f"🔍 Оракул Ньютона неприменим к {presentation.name}: {e}")
    return Outcome(_from_bool(distinguished), result, "tate.is_distinguished")


def check_strong(builder, command, settings) -> Outcome:
    presentation: TatePresentation = builder.get(command.target)
    verdict = is_strongly_generating(presentation, settings=settings)
    result = {"verdict": verdict.value}
    if presentation.witness is not None and verdict is Verdict.FAIL:
        result["witness"] = str(presentation.witness)
    return Outcome(_VERDICT_STATUS[verdict], result, "tate.is_strongly_generating")


def check_universal(builder, command, settings) -> Outcome:
    presentation: TatePresentation = builder.get(command.target)
    witnesses = [presentation.ring.from_expr(formula_expr(w)) for w in command.witnesses]
    condition = check_universally_distinguished(presentation, witnesses, settings)
    return Outcome(_VERDICT_STATUS[condition.verdict], serialize_condition(condition),
                   "sympathique.check_universally_distinguished")


def check_sympathique(builder, command, settings) -> Outcome:
    presentation = builder.relative(command.target, command.fibers)
    report = SympathiqueVerifier(presentation, settings).run()
    result = serialize_sympathique(report)
    failing = report.failing()
    if failing:
        result["witness"] = failing[0].witness
    return Outcome(_VERDICT_STATUS[report.overall], result, "sympathique.verifier")


def check_reduced(builder, command, settings) -> Outcome:
    ideal = builder.get(command.target)
    reduced = is_reduced(ideal, settings)
    result = {"reduced": reduced}
    if not reduced:
        result["witness"] = ideal.describe()
    return Outcome(_from_bool(reduced), result, "ideal.is_reduced")


def check_geomreduced(builder, command, settings) -> Outcome:
    ideal = builder.get(command.target)
    reduced = is_geometrically_reduced(ideal, fiber_extensions(ideal) or None, settings)
    return Outcome(_from_bool(reduced), {"geometrically_reduced": reduced}, "ideal.is_geometrically_reduced")


def check_irreducible(builder, command, settings) -> Outcome:
    verdict = is_geometrically_irreducible(builder.get(command.target), settings)
    return Outcome(_VERDICT_STATUS[verdict], {"verdict": verdict.value}, "ideal.is_geometrically_irreducible")


def check_components(builder, command, settings) -> Outcome:
    idempotents = connected_components(builder.get(command.target), settings)
    return Outcome(RecordStatus.COMPLETE, {"idempotents": serialize_components(idempotents)},
                   "ideal.connected_components")


def check_dimension(builder, command, settings) -> Outcome:
    return Outcome(RecordStatus.COMPLETE, {"dimension": dimension_over(builder.get(command.target))},
                   "ideal.dimension_over")


def check_primes(builder, command, settings) -> Outcome:
    return Outcome(RecordStatus.COMPLETE, serialize_spectrum(spectrum(builder.get(command.target), settings=settings)),
                   "ideal.spectrum")


def check_flat(builder, command, settings) -> Outcome:
    model = builder.get(command.target)
    flat = is_flat_module(model)
    result = {"flat": flat}
    if not flat:
        witness = torsion_witness(model)
        result["witness"] = None if witness is None else str(witness)
    return Outcome(_from_bool(flat), result, "valuation.is_flat_module")


HANDLERS: Dict[str, Callable[[SessionBuilder, nodes.Command, KernelSettings], Outcome]] = {
    "reduce": run_reduce,
    "model": run_model,
    "basis": run_basis,
    "cover": run_cover,
    "check distinguished": check_distinguished,
    "check strong": check_strong,
    "check universal": check_universal,
    "check sympathique": check_sympathique,
    "check reduced": check_reduced,
    "check geomreduced": check_geomreduced,
    "check irreducible": check_irreducible,
    "check components": check_components,
    "check dimension": check_dimension,
    "check primes": check_primes,
    "check flat": check_flat,
}


def execute_command(builder: SessionBuilder, command: nodes.Command, settings: KernelSettings) -> Outcome:
    return HANDLERS[command_key(command)](builder, command, settings)
