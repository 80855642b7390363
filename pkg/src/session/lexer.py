"""
Лексер сценариев сессии (.grd).

Токены: идентификаторы, целые числа, знаки пунктуации и стрелка '->'.
Комментарий начинается с '#' и длится до конца строки.
"""
from dataclasses import dataclass
from typing import List

from src.session.errors import SessionSyntaxError

IDENT = "ident"
NUMBER = "number"
PUNCT = "punct"
EOF = "eof"

PUNCTUATION = set("()[]{}<>,;:=/+-*^|.")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int

    def is_punct(self, text: str) -> bool:
        return self.kind == PUNCT and self.text == text

    def is_word(self, text: str) -> bool:
        return self.kind == IDENT and self.text == text

    def __repr__(self):
        return f"{self.kind}:{self.text!r}@{self.line}:{self.column}"


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    line, column = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line, column = line + 1, 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            column += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start = i
        if ch.isalpha() or ch == "_":
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
            tokens.append(Token(IDENT, text[start:i], line, column))
        elif ch.isdigit():
            while i < n and text[i].isdigit():
                i += 1
            tokens.append(Token(NUMBER, text[start:i], line, column))
        elif ch == "-" and text.startswith("->", i):
            i += 2
            tokens.append(Token(PUNCT, "->", line, column))
        elif ch in PUNCTUATION:
            i += 1
            tokens.append(Token(PUNCT, ch, line, column))
        else:
            raise SessionSyntaxError(f"Недопустимый символ '{ch}'", line, column)
        column += i - start
    tokens.append(Token(EOF, "", line, column))
    return tokens
