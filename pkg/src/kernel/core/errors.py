class KernelError(Exception):
    """Базовое исключение ядра gradal."""
    pass


class UsageError(KernelError):
    """Некорректное использование: несовместимые группы, разные степени, неоднородный член и т.п."""
    pass


class PrecisionError(KernelError):
    """Нормы ниже порога точности или исчерпан бюджет шагов деления."""
    pass


class UnsupportedError(KernelError):
    """Поле коэффициентов, форма базы или перечисление не поддерживаются."""
    pass


class UndecidableError(KernelError):
    """Несовершенная база без данных о расширениях: ответ не вычислим на этом масштабе."""
    pass


class InconclusiveError(KernelError):
    """Ограниченный поиск исчерпан (границы размерности, попытки, пределы перебора)."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class NonReducedFiberError(KernelError):
    """Слой над точкой спектра не приведён; prime: описание этой точки."""

    def __init__(self, prime: str, detail: str = ""):
        message = f"Неприведённый слой над {prime}"
        if detail:
            message += f": {detail}"
        super().__init__(message)
        self.prime = prime
