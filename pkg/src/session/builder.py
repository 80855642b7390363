"""
Построение объектов ядра по объявлениям сессии.

Объекты строятся лениво при первом обращении команды и кэшируются;
ошибка построения запоминается и повторно выдаётся каждой зависимой команде.
"""
import threading
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

import sympy
from sympy import Symbol
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication,
    parse_expr,
    standard_transformations,
)

from src.kernel.core.errors import KernelError, UsageError
from src.kernel.core.settings import KernelSettings
from src.kernel.corpoid.base_field import BaseField
from src.kernel.corpoid.corpoid import Corpoid
from src.kernel.corpoid.polynomial import GradedPolynomialRing
from src.kernel.degree.groups import MultRealGroup, literal_bases
from src.kernel.ideal.graded_ideal import GradedIdeal
from src.kernel.sympathique.presentation import RelativePresentation
from src.kernel.tate.laurent import LaurentField
from src.kernel.tate.presentation import TatePresentation
from src.kernel.tate.series import TateRing
from src.kernel.tate.valued_field import PadicField, TriviallyValuedField
from src.kernel.valuation.flatness import IntegralModel
from src.kernel.valuation.gauss import gauss_extend
from src.kernel.valuation.valuation import GradedValuation
from src.session import nodes
from src.session.errors import SessionError
from src.session.lexer import IDENT, tokenize

# Логирование
# ====================================================
from src.utils.logger.logger import get_logger
logger = get_logger(__name__)

_TRANSFORMS = standard_transformations + (implicit_multiplication, convert_xor)


class DeclarationError(SessionError):
    """Объявление не удалось построить; original: исключение ядра."""

    def __init__(self, declaration: nodes.Declaration, original: Exception):
        super().__init__(f"{declaration.name}: {original}", declaration.loc.line, declaration.loc.column)
        self.declaration = declaration
        self.original = original


# ====================================================
# Формулы
# ====================================================
def formula_expr(text: str) -> sympy.Expr:
    """Текст формулы → выражение sympy; каждый идентификатор: символ."""
    names = {tok.text for tok in tokenize(text) if tok.kind == IDENT}
    local = {name: Symbol(name) for name in names}
    try:
        return parse_expr(text, local_dict=local, transformations=_TRANSFORMS)
    except (SyntaxError, TypeError, ValueError) as e:
        raise UsageError(f"Формула '{text}' не разбирается: {e}")


def formula_rational(text: str) -> Fraction:
    value = formula_expr(text)
    if not value.is_Rational:
        raise UsageError(f"'{text}' не является рациональным числом")
    return Fraction(int(value.p), int(value.q))


def _literal_group(texts: Sequence[str]) -> MultRealGroup:
    primes = set()
    for text in texts:
        for base in literal_bases(text):
            primes.update(int(p) for p in sympy.primefactors(base.numerator * base.denominator))
    return MultRealGroup.over_primes(primes)


# ====================================================
# Построитель
# ====================================================
class SessionBuilder:
    def __init__(self, session: nodes.Session, settings: KernelSettings):
        self.settings = settings
        self.declarations: Dict[str, nodes.Declaration] = {d.name: d for d in session.declarations}
        self._objects: Dict[str, object] = {}
        self._failures: Dict[str, DeclarationError] = {}
        self._relative: Dict[Tuple, RelativePresentation] = {}
        self._lock = threading.RLock()

    def get(self, name: str):
        with self._lock:
            if name in self._failures:
                raise self._failures[name]
            if name not in self._objects:
                declaration = self.declarations[name]
                try:
                    self._objects[name] = self._build(declaration)
                except DeclarationError:
                    raise
                except (KernelError, ValueError) as e:
                    failure = DeclarationError(declaration, e)
                    self._failures[name] = failure
                    logger.error(f"❌ Объявление {declaration.keyword} {name}: {e}")
                    raise failure
                logger.debug(f"🔍 Построено {declaration.keyword} {name}")
            return self._objects[name]

    def relative(self, name: str, fibers: Sequence[nodes.FiberSpec] = ()) -> RelativePresentation:
        """Относительное представление с точками слоёв команды (кэш по набору точек)."""
        key = (name, tuple(fibers))
        if fibers:
            self.get(name)
        with self._lock:
            if key not in self._relative:
                declaration = self.declarations[name]
                value: nodes.PresentExpr = declaration.value
                base = self.get(value.over.name)
                points = [{var: formula_expr(text) for var, text in spec.assignments} for spec in fibers]
                self._relative[key] = RelativePresentation(
                    base,
                    [(var, radius) for var, radius in value.variables],
                    [formula_expr(r) for r in value.relators],
                    points,
                    name,
                    self.settings,
                )
            return self._relative[key]

    def _build(self, declaration: nodes.Declaration):
        value = declaration.value
        if declaration.keyword == "group":
            return MultRealGroup([formula_rational(g) for g in value.generators])
        if declaration.keyword == "field":
            return self._field(value)
        if declaration.keyword == "corpoid":
            return self._corpoid(value)
        if declaration.keyword == "val":
            return self._valuation(value)
        if declaration.keyword == "tate":
            ring = TateRing(self.get(value.field.name), list(value.variables), self.settings.eps)
            return TatePresentation.from_exprs(ring, [formula_expr(r) for r in value.relators], declaration.name)
        return self._presentation(declaration.name, value)

    # ------------------------
    # Поля
    # ------------------------
    def _base_field(self, term) -> BaseField:
        if isinstance(term, nodes.Ref):
            return self.get(term.name)
        field = BaseField.rational() if term.order is None else BaseField.finite(term.order)
        if term.parameters:
            field = BaseField.function_field(field, term.parameters)
        return field

    def _gamma(self, term) -> List[Fraction]:
        if term is None:
            return []
        if isinstance(term, nodes.GroupLiteral):
            return [formula_rational(g) for g in term.generators]
        return list(self.get(term.name).generators)

    def _field(self, value):
        if isinstance(value, nodes.BaseFieldExpr):
            return self._base_field(value)
        if isinstance(value, nodes.TrivialFieldExpr):
            return TriviallyValuedField(self._base_field(value.base), self._gamma(value.group))
        if isinstance(value, nodes.PadicFieldExpr):
            return PadicField(value.prime, self._gamma(value.group))
        return LaurentField(
            self._base_field(value.residue),
            formula_rational(value.t_norm),
            value.precision,
            self._gamma(value.group),
        )

    # ------------------------
    # Корпоиды и валюации
    # ------------------------
    def _corpoid(self, value: nodes.CorpoidExpr) -> Corpoid:
        base = self._base_field(value.base)
        if value.sections:
            group = _literal_group([degree for _, degree in value.sections])
            return Corpoid(base, group, [(name, group.parse(degree)) for name, degree in value.sections])
        if value.group is None:
            return Corpoid.trivial(base)
        group = MultRealGroup(self._gamma(value.group))
        return Corpoid.split(base, group, [group.generator(i) for i in range(len(group.generators))])

    def _target_corpoid(self, term) -> Corpoid:
        target = self._base_field(term) if not isinstance(term, nodes.Ref) else self.get(term.name)
        return target if isinstance(target, Corpoid) else Corpoid.trivial(target)

    def _valuation(self, value):
        if isinstance(value, nodes.GaussExpr):
            base: GradedValuation = self.get(value.base.name)
            group = base.corpoid.group
            ring = GradedPolynomialRing(base.corpoid, [(name, group.parse(degree)) for name, degree, _ in value.variables])
            return gauss_extend(base, ring, {name: formula_rational(gamma) for name, _, gamma in value.variables})
        if value.kind == "padic":
            return GradedValuation.padic(Corpoid.trivial(BaseField.rational()), value.prime)
        corpoid = self._target_corpoid(value.target)
        if value.kind == "trivial":
            return GradedValuation.trivial(corpoid)
        if value.kind == "tadic":
            return GradedValuation.tadic(corpoid, value.parameter, formula_rational(value.value))
        return GradedValuation.lex(corpoid, value.height)

    # ------------------------
    # Представления
    # ------------------------
    def _presentation(self, name: str, value: nodes.PresentExpr):
        over = self.get(value.over.name)
        relators = [formula_expr(r) for r in value.relators]
        if isinstance(over, TatePresentation):
            # точки слоёв задаёт команда; объявление проверяется без них
            return self.relative(name)
        if isinstance(over, GradedValuation):
            return IntegralModel(over, [var for var, _ in value.variables], relators)
        group = over.group
        ring = GradedPolynomialRing(over, [(var, group.parse(degree)) for var, degree in value.variables])
        return GradedIdeal.from_exprs(ring, relators)
