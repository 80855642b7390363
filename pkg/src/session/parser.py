"""
Разбор сценария сессии рекурсивным спуском.

    session     := { (declaration | command) ';' }
    declaration := ('group'|'field'|'corpoid'|'val'|'tate'|'present') NAME '=' value
    command     := 'reduce' NAME
                 | 'check' MODE NAME ['over' NAME] ['with' 'fibers' '[' fiber {',' fiber} ']']
                                     ['witnesses' '[' formula {',' formula} ']']
                 | 'cover' NAME | 'model' NAME
                 | 'basis' NAME 'radius' formula 'bound' INT

Имена разрешаются по мере разбора: ссылка допустима только на объявление выше.
"""
from typing import Dict, List, Optional, Sequence, Tuple

from src.session import nodes
from src.session.errors import DuplicateNameError, NameResolutionError, TypeMismatchError, at
from src.session.lexer import EOF, IDENT, NUMBER, PUNCT, Token, tokenize

# Логирование
# ====================================================
from src.utils.logger.logger import get_logger
logger = get_logger(__name__)

# Виды объявленных объектов
GROUP = "group"
FIELD = "field"
VALUED_FIELD = "valued_field"
CORPOID = "corpoid"
VALUATION = "valuation"
GAUSS = "gauss"
TATE = "tate"
RELATIVE = "relative"
MODEL = "model"
GRADED = "graded"

KIND_LABELS = {
    GROUP: "группа",
    FIELD: "поле",
    VALUED_FIELD: "нормированное поле",
    CORPOID: "корпоид",
    VALUATION: "валюация",
    GAUSS: "валюация Гаусса",
    TATE: "алгебра Тейта",
    RELATIVE: "относительное представление",
    MODEL: "целая модель",
    GRADED: "градуированный фактор",
}

DECLARATION_KEYWORDS = ("group", "field", "corpoid", "val", "tate", "present")
COMMAND_VERBS = ("reduce", "check", "cover", "model", "basis")
RESERVED = set(DECLARATION_KEYWORDS) | set(COMMAND_VERBS)

CHECK_TARGETS = {
    "distinguished": (TATE,),
    "strong": (TATE,),
    "universal": (TATE,),
    "sympathique": (RELATIVE,),
    "reduced": (GRADED,),
    "geomreduced": (GRADED,),
    "irreducible": (GRADED,),
    "components": (GRADED,),
    "dimension": (GRADED,),
    "primes": (GRADED,),
    "flat": (MODEL,),
}

VERB_TARGETS = {
    "reduce": (TATE, VALUATION, GAUSS),
    "cover": (MODEL, RELATIVE),
    "model": (TATE,),
    "basis": (VALUED_FIELD,),
}

BASE_FIELD_WORDS = ("Q", "GF", "Fq")

_STOPS = {",", ";", ")", "]", "}", "<", ">", ":", "->", "=", "|"}
_STOP_WORDS = {"radius", "bound", "over", "with", "witnesses"}
_OPEN = {"(", "[", "{"}
_CLOSE = {")", "]", "}"}


def join_formula(tokens: Sequence[Token]) -> str:
    """Канонический текст формулы: токены подряд, пробел только между словами."""
    text = ""
    prev: Optional[Token] = None
    for tok in tokens:
        if prev is not None and prev.kind in (IDENT, NUMBER) and tok.kind in (IDENT, NUMBER):
            text += " "
        text += tok.text
        prev = tok
    return text


def _location(tok: Token) -> nodes.Location:
    return nodes.Location(tok.line, tok.column)


class SessionParser:
    def __init__(self, text: str):
        self.tokens: List[Token] = tokenize(text)
        self.pos = 0
        self.names: Dict[str, nodes.Declaration] = {}

    # ------------------------
    # Токены
    # ------------------------
    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, offset: int = 1) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != EOF:
            self.pos += 1
        return tok

    def accept(self, text: str) -> bool:
        if self.current.is_punct(text):
            self.advance()
            return True
        return False

    def accept_word(self, text: str) -> bool:
        if self.current.is_word(text):
            self.advance()
            return True
        return False

    def expect(self, text: str) -> Token:
        tok = self.current
        if not tok.is_punct(text):
            raise at(tok, f"Ожидалось '{text}', получено '{tok.text or 'конец файла'}'")
        return self.advance()

    def expect_word(self, text: str) -> Token:
        tok = self.current
        if not tok.is_word(text):
            raise at(tok, f"Ожидалось '{text}', получено '{tok.text or 'конец файла'}'")
        return self.advance()

    def expect_ident(self, what: str = "имя") -> Token:
        tok = self.current
        if tok.kind != IDENT:
            raise at(tok, f"Ожидалось {what}, получено '{tok.text or 'конец файла'}'")
        return self.advance()

    def expect_number(self) -> int:
        tok = self.current
        if tok.kind != NUMBER:
            raise at(tok, f"Ожидалось целое число, получено '{tok.text or 'конец файла'}'")
        self.advance()
        return int(tok.text)

    # ------------------------
    # Имена
    # ------------------------
    def resolve(self, tok: Token, allowed: Sequence[str]) -> nodes.Declaration:
        declaration = self.names.get(tok.text)
        if declaration is None:
            raise at(tok, f"Имя '{tok.text}' не объявлено выше", NameResolutionError)
        if declaration.kind not in allowed:
            expected = " или ".join(KIND_LABELS[k] for k in allowed)
            raise at(
                tok,
                f"'{tok.text}' имеет вид {KIND_LABELS[declaration.kind]}, ожидалось: {expected}",
                TypeMismatchError,
            )
        return declaration

    def ref(self, allowed: Sequence[str]) -> nodes.Ref:
        tok = self.expect_ident()
        self.resolve(tok, allowed)
        return nodes.Ref(tok.text, _location(tok))

    # ------------------------
    # Формулы
    # ------------------------
    def formula(self) -> str:
        start = self.current
        depth = 0
        parts: List[Token] = []
        while True:
            tok = self.current
            if tok.kind == EOF or tok.is_punct(";"):
                break
            if depth == 0 and (
                (tok.kind == PUNCT and tok.text in _STOPS) or (tok.kind == IDENT and tok.text in _STOP_WORDS)
            ):
                break
            if tok.kind == PUNCT and tok.text in _OPEN:
                depth += 1
            elif tok.kind == PUNCT and tok.text in _CLOSE:
                depth -= 1
            parts.append(self.advance())
        if depth:
            raise at(start, "Незакрытая скобка в формуле")
        if not parts:
            raise at(start, f"Ожидалась формула, получено '{start.text or 'конец файла'}'")
        return join_formula(parts)

    def formula_list(self, open_: str, close: str) -> Tuple[str, ...]:
        self.expect(open_)
        items: List[str] = []
        if not self.accept(close):
            items.append(self.formula())
            while self.accept(","):
                items.append(self.formula())
            self.expect(close)
        return tuple(items)

    def typed_variables(self, close: str) -> Tuple[Tuple[str, str], ...]:
        """NAME ':' formula {',' ...} до закрывающей скобки (сама скобка не поглощается)."""
        items: List[Tuple[str, str]] = []
        if self.current.is_punct(close):
            return ()
        while True:
            name = self.expect_ident("имя переменной").text
            self.expect(":")
            items.append((name, self.formula()))
            if not self.accept(","):
                return tuple(items)

    # ====================================================
    # Сессия
    # ====================================================
    def parse(self) -> nodes.Session:
        statements: List[nodes.Statement] = []
        while self.current.kind != EOF:
            tok = self.current
            if tok.kind == IDENT and tok.text in DECLARATION_KEYWORDS:
                statement = self.declaration()
            elif tok.kind == IDENT and tok.text in COMMAND_VERBS:
                statement = self.command()
            else:
                raise at(tok, f"Ожидалось объявление или команда, получено '{tok.text}'")
            self.expect(";")
            statements.append(statement)
        session = nodes.Session(tuple(statements))
        logger.debug(f"📊 Сценарий: {len(session.declarations)} объявлений, {len(session.commands)} команд")
        return session

    # ====================================================
    # Объявления
    # ====================================================
    def declaration(self) -> nodes.Declaration:
        keyword = self.advance().text
        name_tok = self.expect_ident("имя объявления")
        if name_tok.text in RESERVED:
            raise at(name_tok, f"'{name_tok.text}': зарезервированное слово")
        first = self.names.get(name_tok.text)
        if first is not None:
            raise DuplicateNameError(name_tok.text, name_tok.line, name_tok.column, first.loc.line, first.loc.column)
        self.expect("=")
        value, kind = {
            "group": self.group_value,
            "field": self.field_value,
            "corpoid": self.corpoid_value,
            "val": self.valuation_value,
            "tate": self.tate_value,
            "present": self.present_value,
        }[keyword]()
        declaration = nodes.Declaration(keyword, name_tok.text, value, kind, _location(name_tok))
        self.names[name_tok.text] = declaration
        return declaration

    # ------------------------
    # Группы и поля
    # ------------------------
    def group_literal(self) -> nodes.GroupLiteral:
        tok = self.current
        return nodes.GroupLiteral(self.formula_list("<", ">"), _location(tok))

    def group_term(self):
        if self.current.is_punct("<"):
            return self.group_literal()
        return self.ref((GROUP,))

    def group_value(self):
        return self.group_literal(), GROUP

    def base_field_expr(self) -> nodes.BaseFieldExpr:
        tok = self.expect_ident("поле")
        if tok.text not in BASE_FIELD_WORDS:
            raise at(tok, f"Неизвестное поле '{tok.text}' (ожидалось Q, GF(q) или Fq(q))")
        order = None
        if tok.text != "Q":
            self.expect("(")
            order = self.expect_number()
            self.expect(")")
        parameters: Tuple[str, ...] = ()
        if self.accept("("):
            names = [self.expect_ident("параметр").text]
            while self.accept(","):
                names.append(self.expect_ident("параметр").text)
            self.expect(")")
            parameters = tuple(names)
        return nodes.BaseFieldExpr(order, parameters, _location(tok))

    def base_field_term(self):
        tok = self.current
        if tok.kind == IDENT and tok.text in self.names:
            return self.ref((FIELD,))
        if tok.kind == IDENT and tok.text in BASE_FIELD_WORDS:
            return self.base_field_expr()
        if tok.kind == IDENT:
            raise at(tok, f"Имя '{tok.text}' не объявлено выше", NameResolutionError)
        raise at(tok, f"Ожидалось поле, получено '{tok.text or 'конец файла'}'")

    def optional_group(self):
        if self.accept(","):
            return self.group_term()
        return None

    def field_value(self):
        tok = self.current
        loc = _location(tok)
        if tok.is_word("trivial"):
            self.advance()
            self.expect("(")
            base = self.base_field_term()
            group = self.optional_group()
            self.expect(")")
            return nodes.TrivialFieldExpr(base, group, loc), VALUED_FIELD
        if tok.is_word("padic"):
            self.advance()
            self.expect("(")
            prime = self.expect_number()
            group = self.optional_group()
            self.expect(")")
            return nodes.PadicFieldExpr(prime, group, loc), VALUED_FIELD
        if tok.is_word("laurent"):
            self.advance()
            self.expect("(")
            residue = self.base_field_term()
            self.expect(",")
            t_norm = self.formula()
            self.expect(",")
            precision = self.expect_number()
            group = self.optional_group()
            self.expect(")")
            return nodes.LaurentFieldExpr(residue, t_norm, precision, group, loc), VALUED_FIELD
        return self.base_field_expr(), FIELD

    # ------------------------
    # Корпоиды и валюации
    # ------------------------
    def corpoid_value(self):
        tok = self.expect_word("split")
        self.expect("(")
        base = self.base_field_term()
        group = None
        sections: Tuple[Tuple[str, str], ...] = ()
        if self.accept(","):
            if self.current.kind == IDENT and self.peek().is_punct(":"):
                sections = self.typed_variables(")")
            else:
                group = self.group_term()
        self.expect(")")
        return nodes.CorpoidExpr(base, group, sections, _location(tok)), CORPOID

    def valuation_target(self):
        tok = self.current
        if tok.kind == IDENT and tok.text in self.names:
            return self.ref((FIELD, CORPOID))
        return self.base_field_term()

    def valuation_value(self):
        tok = self.expect_ident("валюация")
        loc = _location(tok)
        self.expect("(")
        if tok.text == "trivial":
            value = nodes.ValuationExpr("trivial", target=self.valuation_target(), loc=loc)
        elif tok.text == "tadic":
            target = self.valuation_target()
            self.expect(",")
            parameter = self.expect_ident("параметр").text
            self.expect(":")
            value = nodes.ValuationExpr("tadic", target=target, parameter=parameter, value=self.formula(), loc=loc)
        elif tok.text == "lex":
            target = self.valuation_target()
            self.expect(",")
            value = nodes.ValuationExpr("lex", target=target, height=self.expect_number(), loc=loc)
        elif tok.text == "padic":
            value = nodes.ValuationExpr("padic", prime=self.expect_number(), loc=loc)
        elif tok.text == "gauss":
            self.expect_word("base")
            self.expect("=")
            base = self.ref((VALUATION,))
            variables = []
            while self.accept(","):
                name = self.expect_ident("имя переменной").text
                self.expect(":")
                degree = self.formula()
                self.expect("->")
                variables.append((name, degree, self.formula()))
            self.expect(")")
            return nodes.GaussExpr(base, tuple(variables), loc), GAUSS
        else:
            raise at(tok, f"Неизвестная валюация '{tok.text}' (trivial, tadic, lex, padic, gauss)")
        self.expect(")")
        return value, VALUATION

    # ------------------------
    # Алгебры Тейта и представления
    # ------------------------
    def tate_value(self):
        tok = self.current
        field = self.ref((VALUED_FIELD,))
        self.expect("{")
        variables = self.typed_variables("}")
        self.expect("}")
        relators: Tuple[str, ...] = ()
        if self.accept("/"):
            relators = self.formula_list("(", ")")
        return nodes.TateExpr(field, variables, relators, _location(tok)), TATE

    def present_value(self):
        tok = self.expect_ident("алгебра, валюация или корпоид")
        over = self.resolve(tok, (TATE, VALUATION, CORPOID))
        ref = nodes.Ref(tok.text, _location(tok))
        if over.kind == TATE:
            self.expect("{")
            variables = self.typed_variables("}")
            self.expect("}")
            kind, braces = RELATIVE, True
        elif over.kind == VALUATION:
            self.expect("[")
            names = [self.expect_ident("имя переменной").text]
            while self.accept(","):
                names.append(self.expect_ident("имя переменной").text)
            self.expect("]")
            variables = tuple((n, None) for n in names)
            kind, braces = MODEL, False
        else:
            self.expect("[")
            variables = self.typed_variables("]")
            self.expect("]")
            kind, braces = GRADED, False
        self.expect("/")
        relators = self.formula_list("(", ")")
        return nodes.PresentExpr(ref, tuple(variables), relators, braces, _location(tok)), kind

    # ====================================================
    # Команды
    # ====================================================
    def command(self) -> nodes.Command:
        verb_tok = self.advance()
        verb = verb_tok.text
        loc = _location(verb_tok)
        if verb == "check":
            mode_tok = self.expect_ident("режим проверки")
            if mode_tok.text not in CHECK_TARGETS:
                raise at(mode_tok, f"Неизвестный режим проверки '{mode_tok.text}'")
            return self.check_command(mode_tok.text, loc)
        target_tok = self.expect_ident("цель команды")
        self.resolve(target_tok, VERB_TARGETS[verb])
        if verb == "basis":
            self.expect_word("radius")
            radius = self.formula()
            self.expect_word("bound")
            bound = self.expect_number()
            return nodes.Command(verb, target_tok.text, radius=radius, bound=bound, loc=loc)
        return nodes.Command(verb, target_tok.text, loc=loc)

    def check_command(self, mode: str, loc: nodes.Location) -> nodes.Command:
        target_tok = self.expect_ident("цель проверки")
        target = self.resolve(target_tok, CHECK_TARGETS[mode])
        over = None
        fibers: Tuple[nodes.FiberSpec, ...] = ()
        witnesses: Tuple[str, ...] = ()
        if mode == "sympathique":
            if self.current.is_word("over"):
                self.advance()
                over_tok = self.expect_ident("база")
                self.resolve(over_tok, (TATE,))
                if over_tok.text != target.value.over.name:
                    raise at(
                        over_tok,
                        f"'{target.name}' построено над '{target.value.over.name}', а не над '{over_tok.text}'",
                        TypeMismatchError,
                    )
                over = over_tok.text
            if self.accept_word("with"):
                self.expect_word("fibers")
                fibers = self.fiber_list()
        if mode == "universal" and self.accept_word("witnesses"):
            witnesses = self.formula_list("[", "]")
        return nodes.Command("check", target_tok.text, mode=mode, over=over,
                             fibers=fibers, witnesses=witnesses, loc=loc)

    def assignment(self) -> Tuple[str, str]:
        name = self.expect_ident("переменная базы").text
        self.expect("=")
        return name, self.formula()

    def fiber(self) -> nodes.FiberSpec:
        tok = self.current
        if self.accept("("):
            items = [self.assignment()]
            while self.accept(","):
                items.append(self.assignment())
            self.expect(")")
        else:
            items = [self.assignment()]
        return nodes.FiberSpec(tuple(items), _location(tok))

    def fiber_list(self) -> Tuple[nodes.FiberSpec, ...]:
        self.expect("[")
        fibers: List[nodes.FiberSpec] = []
        if not self.accept("]"):
            fibers.append(self.fiber())
            while self.accept(","):
                fibers.append(self.fiber())
            self.expect("]")
        return tuple(fibers)


def parse_session(text: str) -> nodes.Session:
    return SessionParser(text).parse()
