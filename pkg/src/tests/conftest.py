import os
import random
import sys
from fractions import Fraction

import pytest

# Корень проекта в sys.path: импорты вида src.kernel... при запуске pytest из любой директории
root_dir = os.path.abspath(os.path.join(os.path.dirname(__file__), "..", ".."))
if root_dir not in sys.path:
    sys.path.insert(0, root_dir)

from src.kernel.core.settings import KernelSettings  # noqa: E402
from src.kernel.corpoid.base_field import BaseField  # noqa: E402
from src.kernel.degree.groups import MultRealGroup  # noqa: E402
from src.kernel.tate.laurent import LaurentField  # noqa: E402
from src.kernel.tate.valued_field import PadicField, TriviallyValuedField  # noqa: E402


@pytest.fixture
def rng():
    """Фикстура: генератор случайных чисел с фиксированным зерном"""
    return random.Random(20240917)


@pytest.fixture
def settings():
    """Фикстура: настройки ядра из config.yaml"""
    return KernelSettings.from_config()


@pytest.fixture
def group23():
    """Фикстура: группа степеней <2, 3>"""
    return MultRealGroup([2, 3])


@pytest.fixture
def rationals():
    return BaseField.rational()


@pytest.fixture
def gf3():
    return BaseField.prime(3)


@pytest.fixture
def trivial_q():
    """Фикстура: Q с тривиальной нормой и Γ = <2, 3>"""
    return TriviallyValuedField(BaseField.rational(), [2, 3])


@pytest.fixture
def q2():
    """Фикстура: Q_2"""
    return PadicField(2)


@pytest.fixture
def f3t():
    """Фикстура: F_3((t)) с |t| = 1/2"""
    return LaurentField(BaseField.prime(3), Fraction(1, 2), 12)


@pytest.fixture(params=["trivial_q", "q2", "f3t"])
def valued_field(request):
    """Фикстура: три базовых поля приёмки"""
    return request.getfixturevalue(request.param)
