from enum import Enum


class Ordering(Enum):
    LESS = "less"           # a < b
    EQUAL = "equal"         # a = b
    GREATER = "greater"     # a > b

    @classmethod
    def of(cls, sign: int) -> "Ordering":
        if sign < 0:
            return cls.LESS
        if sign > 0:
            return cls.GREATER
        return cls.EQUAL


# ==========================
# Трёхзначный вердикт проверок
# ==========================
class Verdict(Enum):
    PASS = "pass"                   # условие проверено
    FAIL = "fail"                   # найден контрпример (свидетель в отчёте)
    INCONCLUSIVE = "inconclusive"   # ограниченный поиск исчерпан, ответа нет

    @classmethod
    def from_bool(cls, value: bool) -> "Verdict":
        return cls.PASS if value else cls.FAIL

    @classmethod
    def combine(cls, verdicts) -> "Verdict":
        """FAIL доминирует, затем INCONCLUSIVE; пустой список: PASS."""
        verdicts = list(verdicts)
        if any(v is cls.FAIL for v in verdicts):
            return cls.FAIL
        if any(v is cls.INCONCLUSIVE for v in verdicts):
            return cls.INCONCLUSIVE
        return cls.PASS


class FieldKind(Enum):
    RATIONAL = "Q"                  # поле рациональных чисел
    PRIME = "Fp"                    # простое конечное поле
    FINITE = "Fq"                   # F_p[a]/(m), m неприводим
    EXTENSION = "ext"               # простое расширение одним неприводимым многочленом
    FUNCTION = "P(s)"               # поле рациональных функций над Q или F_p


class ValuationKind(Enum):
    TRIVIAL = "trivial"             # |x| = 1 для x != 0
    MONOMIAL = "monomial"           # на k(t1..th), значения в Q^h lex или вещественный вес
    PADIC = "padic"                 # p-адическая на Q


class ValuedFieldKind(Enum):
    TRIVIAL = "trivial"             # Q или F_q с тривиальной нормой
    PADIC = "padic"                 # Q_p (точные рациональные коэффициенты)
    LAURENT = "laurent"             # F_q((t)), усечение по t^N


class RecordStatus(Enum):
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"
    COMPLETE = "complete"           # команда построения (reduce, cover, model, basis) выполнена
    ERROR = "error"
