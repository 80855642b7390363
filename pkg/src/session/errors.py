from typing import Optional


class SessionError(Exception):
    """Ошибка сценария сессии с позицией в исходном тексте."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column

    def __str__(self):
        return f"{self.line}:{self.column}: {self.message}"


class SessionSyntaxError(SessionError):
    """Нарушение грамматики сценария."""
    pass


class NameResolutionError(SessionError):
    """Ссылка на имя, не объявленное выше по тексту."""
    pass


class TypeMismatchError(SessionError):
    """Объявление другого вида, чем требует конструкция (например, валюация вместо поля)."""
    pass


class DuplicateNameError(SessionError):
    """Повторное объявление имени; хранит обе позиции."""

    def __init__(self, name: str, line: int, column: int, first_line: int, first_column: int):
        super().__init__(
            f"Имя '{name}' уже объявлено в {first_line}:{first_column}", line, column
        )
        self.name = name
        self.first_line = first_line
        self.first_column = first_column

    @property
    def locations(self) -> tuple:
        return (self.first_line, self.first_column), (self.line, self.column)


def at(token, message: str, kind: Optional[type] = None) -> SessionError:
    """Ошибка в позиции токена (по умолчанию синтаксическая)."""
    return (kind or SessionSyntaxError)(message, token.line, token.column)
