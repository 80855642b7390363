"""
Дерево сценария сессии.

Позиции узлов (строка, столбец) не участвуют в сравнении: два дерева,
разобранные из текста и из его канонической печати, равны.
Формулы (многочлены, литералы степеней, рациональные числа) хранятся
каноническим текстом, собранным из токенов.
"""
from dataclasses import dataclass, field
from typing import Optional, Tuple, Union


@dataclass(frozen=True)
class Location:
    line: int = 0
    column: int = 0

    def __str__(self):
        return f"{self.line}:{self.column}"


NOWHERE = Location()


def _loc():
    return field(default=NOWHERE, compare=False)


# ====================================================
# Выражения объявлений
# ====================================================
@dataclass(frozen=True)
class Ref:
    name: str
    loc: Location = _loc()


@dataclass(frozen=True)
class GroupLiteral:
    generators: Tuple[str, ...]
    loc: Location = _loc()


@dataclass(frozen=True)
class BaseFieldExpr:
    order: Optional[int]                    # None для Q, иначе q поля GF(q)
    parameters: Tuple[str, ...] = ()        # поле функций P(s1..sk)
    loc: Location = _loc()


@dataclass(frozen=True)
class TrivialFieldExpr:
    base: Union[Ref, BaseFieldExpr]
    group: Optional[Union[Ref, GroupLiteral]] = None
    loc: Location = _loc()


@dataclass(frozen=True)
class PadicFieldExpr:
    prime: int
    group: Optional[Union[Ref, GroupLiteral]] = None
    loc: Location = _loc()


@dataclass(frozen=True)
class LaurentFieldExpr:
    residue: Union[Ref, BaseFieldExpr]
    t_norm: str
    precision: int
    group: Optional[Union[Ref, GroupLiteral]] = None
    loc: Location = _loc()


@dataclass(frozen=True)
class CorpoidExpr:
    base: Union[Ref, BaseFieldExpr]
    group: Optional[Union[Ref, GroupLiteral]] = None
    sections: Tuple[Tuple[str, str], ...] = ()      # (имя сечения, литерал степени)
    loc: Location = _loc()


@dataclass(frozen=True)
class ValuationExpr:
    kind: str                                       # trivial | tadic | lex | padic
    target: Optional[Union[Ref, BaseFieldExpr]] = None
    parameter: Optional[str] = None
    value: Optional[str] = None
    height: Optional[int] = None
    prime: Optional[int] = None
    loc: Location = _loc()


@dataclass(frozen=True)
class GaussExpr:
    base: Ref
    variables: Tuple[Tuple[str, str, str], ...]     # (переменная, степень, γ)
    loc: Location = _loc()


@dataclass(frozen=True)
class TateExpr:
    field: Ref
    variables: Tuple[Tuple[str, str], ...]          # (переменная, радиус)
    relators: Tuple[str, ...] = ()
    loc: Location = _loc()


@dataclass(frozen=True)
class PresentExpr:
    over: Ref
    variables: Tuple[Tuple[str, Optional[str]], ...]
    relators: Tuple[str, ...]
    braces: bool = False                            # A{...} над алгеброй Тейта, иначе v[...] / K[...]
    loc: Location = _loc()


Expr = Union[Ref, GroupLiteral, BaseFieldExpr, TrivialFieldExpr, PadicFieldExpr, LaurentFieldExpr,
             CorpoidExpr, ValuationExpr, GaussExpr, TateExpr, PresentExpr]


# ====================================================
# Инструкции
# ====================================================
@dataclass(frozen=True)
class Declaration:
    keyword: str                    # group | field | corpoid | val | tate | present
    name: str
    value: Expr
    kind: str = field(default="", compare=False)    # вид объекта после разрешения имён
    loc: Location = _loc()


@dataclass(frozen=True)
class FiberSpec:
    assignments: Tuple[Tuple[str, str], ...]
    loc: Location = _loc()


@dataclass(frozen=True)
class Command:
    verb: str                       # reduce | check | cover | model | basis
    target: str
    mode: Optional[str] = None      # режим check
    over: Optional[str] = None
    fibers: Tuple[FiberSpec, ...] = ()
    witnesses: Tuple[str, ...] = ()
    radius: Optional[str] = None
    bound: Optional[int] = None
    loc: Location = _loc()


Statement = Union[Declaration, Command]


@dataclass(frozen=True)
class Session:
    statements: Tuple[Statement, ...] = ()

    @property
    def declarations(self) -> Tuple[Declaration, ...]:
        return tuple(s for s in self.statements if isinstance(s, Declaration))

    @property
    def commands(self) -> Tuple[Command, ...]:
        return tuple(s for s in self.statements if isinstance(s, Command))

    def declaration(self, name: str) -> Declaration:
        for d in self.declarations:
            if d.name == name:
                return d
        raise KeyError(name)
