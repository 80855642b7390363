"""
Тесты разбора сценариев сессии: объявления, команды, разрешение имён и ошибки с позициями
"""
from pathlib import Path

import pytest

from src.session import nodes
from src.session.errors import DuplicateNameError, NameResolutionError, SessionSyntaxError, TypeMismatchError
from src.session.lexer import EOF, IDENT, NUMBER, PUNCT, tokenize
from src.session.parser import GRADED, MODEL, RELATIVE, TATE, VALUED_FIELD, join_formula, parse_session

SESSIONS_DIR = Path(__file__).resolve().parents[3] / "sessions"

BASE = "group G = <2, 3>;\nfield k = trivial(Q, G);\ntate A = k{S: 1};\n"


@pytest.fixture
def acceptance_text():
    return (SESSIONS_DIR / "acceptance.grd").read_text(encoding="utf-8")


class TestLexer:
    def test_positions_and_comments(self):
        """Тест: комментарий пропускается, позиции считаются с 1"""
        tokens = tokenize("# заголовок\ngroup G = <2>;")
        assert [t.kind for t in tokens[:3]] == [IDENT, IDENT, PUNCT]
        assert (tokens[0].line, tokens[0].column) == (2, 1)
        assert (tokens[1].line, tokens[1].column) == (2, 7)
        assert tokens[-1].kind == EOF

    def test_arrow_is_single_token(self):
        """Тест: '->' распознаётся одним токеном"""
        tokens = tokenize("T: 1 -> 1/2")
        assert [t.text for t in tokens[:-1]] == ["T", ":", "1", "->", "1", "/", "2"]
        assert tokens[2].kind == NUMBER

    def test_invalid_character(self):
        """Тест: недопустимый символ даёт синтаксическую ошибку с позицией"""
        with pytest.raises(SessionSyntaxError) as exc:
            tokenize("group G = <2> @;")
        assert (exc.value.line, exc.value.column) == (1, 15)

    def test_join_formula(self):
        """Тест: пробел сохраняется только между словами"""
        assert join_formula(tokenize("T^2 - T")[:-1]) == "T^2-T"
        assert join_formula(tokenize("2 x")[:-1]) == "2 x"


class TestAcceptanceScript:
    def test_counts(self, acceptance_text):
        """Тест: приёмочный сценарий содержит 9 объявлений и 4 команды"""
        session = parse_session(acceptance_text)
        assert len(session.declarations) == 9
        assert len(session.commands) == 4

    def test_kinds(self, acceptance_text):
        """Тест: виды объявлений определяются при разборе"""
        session = parse_session(acceptance_text)
        assert session.declaration("A").kind == TATE
        assert session.declaration("B").kind == RELATIVE
        assert session.declaration("C").kind == RELATIVE
        assert session.declaration("X").kind == MODEL
        assert session.declaration("k2").kind == VALUED_FIELD

    def test_sympathique_command(self, acceptance_text):
        """Тест: проверка симпатичности с базой и точками слоёв"""
        command = parse_session(acceptance_text).commands[0]
        assert command.verb == "check"
        assert command.mode == "sympathique"
        assert command.target == "B"
        assert command.over == "A"
        assert command.fibers == (
            nodes.FiberSpec((("S", "0"),)),
            nodes.FiberSpec((("S", "1"),)),
        )

    def test_basis_command(self, acceptance_text):
        """Тест: команда basis хранит радиус и границу"""
        command = parse_session(acceptance_text).commands[3]
        assert (command.verb, command.target, command.radius, command.bound) == ("basis", "k2", "1", 4)
        assert command.loc.line == 16


class TestDeclarations:
    def test_relators_are_canonical_text(self):
        """Тест: соотношения хранятся каноническим текстом формулы"""
        session = parse_session(BASE + "present B = A{T: 1} / (T^2 - S, S*T);")
        value = session.declaration("B").value
        assert value.relators == ("T^2-S", "S*T")
        assert value.variables == (("T", "1"),)
        assert value.braces is True

    def test_function_field_and_tadic(self):
        """Тест: поле функций Q(t) и t-адическая валюация"""
        session = parse_session("field F = Q(t);\nval v = tadic(F, t: 1/2);\npresent X = v[x, y] / (x*y - t);")
        assert session.declaration("F").value == nodes.BaseFieldExpr(None, ("t",))
        assert session.declaration("v").value.value == "1/2"
        assert session.declaration("X").value.variables == (("x", None), ("y", None))

    def test_graded_presentation(self):
        """Тест: представление над корпоидом даёт градуированный фактор"""
        session = parse_session("corpoid K = split(GF(3), <2>);\npresent I = K[T: 1, U: 2] / (T*U);")
        assert session.declaration("I").kind == GRADED
        assert session.declaration("K").value.group == nodes.GroupLiteral(("2",))

    def test_gauss_valuation(self):
        """Тест: валюация Гаусса с переменной, степенью и γ"""
        session = parse_session("field F = Q(t);\nval v = tadic(F, t: 1/2);\nval w = gauss(base=v, T: 1 -> 1/2);")
        assert session.declaration("w").value.variables == (("T", "1", "1/2"),)

    def test_mixed_fibers_and_witnesses(self):
        """Тест: точки слоёв из нескольких присваиваний и список свидетелей"""
        text = (
            "group G = <2>;\nfield k = trivial(Q, G);\ntate A = k{S: 1, U: 1};\n"
            "present B = A{T: 1} / (T - S);\n"
            "tate P = k{T: 1} / (T^2 - T);\n"
            "check sympathique B with fibers [S=0, (S=1, U=0)];\n"
            "check universal P witnesses [T, T^2];\n"
        )
        sympathique, universal = parse_session(text).commands
        assert sympathique.over is None
        assert sympathique.fibers[1].assignments == (("S", "1"), ("U", "0"))
        assert universal.witnesses == ("T", "T^2")


class TestErrors:
    def test_duplicate_name_reports_both_locations(self):
        """Тест: повторное имя сообщает обе позиции"""
        with pytest.raises(DuplicateNameError) as exc:
            parse_session("group G = <2>;\ngroup G = <3>;")
        assert exc.value.locations == ((1, 7), (2, 7))
        assert str(exc.value).startswith("2:7:")

    def test_forward_reference(self):
        """Тест: ссылка на имя, объявленное ниже, не разрешается"""
        with pytest.raises(NameResolutionError) as exc:
            parse_session("tate A = k{S: 1};\nfield k = trivial(Q);")
        assert (exc.value.line, exc.value.column) == (1, 10)

    def test_wrong_kind_in_declaration(self):
        """Тест: группа на месте нормированного поля"""
        with pytest.raises(TypeMismatchError):
            parse_session("group G = <2>;\ntate A = G{S: 1};")

    def test_wrong_kind_in_command(self):
        """Тест: проверка отмеченности требует алгебру Тейта"""
        with pytest.raises(TypeMismatchError):
            parse_session("corpoid K = split(Q);\npresent I = K[T: 1] / (T);\ncheck distinguished I;")

    def test_sympathique_over_other_base(self):
        """Тест: 'over' обязан совпадать с базой представления"""
        text = BASE + "tate A2 = k{S: 1};\npresent B = A{T: 1} / (T - S);\ncheck sympathique B over A2;"
        with pytest.raises(TypeMismatchError):
            parse_session(text)

    def test_reserved_name(self):
        """Тест: ключевое слово не может быть именем"""
        with pytest.raises(SessionSyntaxError):
            parse_session("group check = <2>;")

    def test_missing_semicolon(self):
        """Тест: инструкция без ';' в конце файла"""
        with pytest.raises(SessionSyntaxError):
            parse_session("group G = <2>")

    def test_unclosed_bracket(self):
        """Тест: незакрытая скобка в формуле"""
        with pytest.raises(SessionSyntaxError):
            parse_session(BASE + "tate P = k{T: 1} / (T^2 - (T);")

    def test_unknown_check_mode(self):
        """Тест: неизвестный режим проверки"""
        with pytest.raises(SessionSyntaxError):
            parse_session(BASE + "check smooth A;")
