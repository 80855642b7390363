"""
Тесты канонической печати сценария
"""
from pathlib import Path

import pytest

from src.session.parser import parse_session
from src.session.printer import print_command, print_session, print_statement

SESSIONS_DIR = Path(__file__).resolve().parents[3] / "sessions"


class TestCanonicalPrint:
    @pytest.mark.parametrize("name", ["acceptance.grd", "examples.grd"])
    def test_reparse_gives_same_tree(self, name):
        """Тест: разбор канонической печати даёт то же дерево"""
        session = parse_session((SESSIONS_DIR / name).read_text(encoding="utf-8"))
        printed = print_session(session)
        assert parse_session(printed) == session
        assert print_session(parse_session(printed)) == printed

    def test_statement_forms(self):
        """Тест: печать объявлений и команд"""
        session = parse_session(
            "group G = < 2 , 3 >;\n"
            "field k = trivial( Q , G );\n"
            "tate A = k{ S : 1 };\n"
            "present B = A{T: 1} / (T^2 - T);\n"
            "check sympathique B over A with fibers [S = 0, (S = 1)];\n"
        )
        lines = [print_statement(s) for s in session.statements]
        assert lines == [
            "group G = <2, 3>;",
            "field k = trivial(Q, G);",
            "tate A = k{S: 1};",
            "present B = A{T: 1} / (T^2-T);",
            "check sympathique B over A with fibers [S=0, S=1];",
        ]

    def test_basis_command(self):
        """Тест: печать команды basis"""
        session = parse_session("field k2 = trivial(GF(2));\nbasis k2 radius 1/2 bound 3;")
        assert print_command(session.commands[0]) == "basis k2 radius 1/2 bound 3"

    def test_empty_session(self):
        """Тест: пустой сценарий печатается пустой строкой"""
        assert print_session(parse_session("# только комментарий\n")) == ""
