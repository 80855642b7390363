"""
Тесты загрузки и валидации config.yaml и настроек ядра
"""
import copy

import pytest
import yaml

from src.config.config import ConfigManager, ConfigValidationError
from src.kernel.core.settings import KernelSettings, resolve

VALID = {
    "KERNEL_SETTINGS": {
        "DEG_BOUND": 6,
        "DIM_BOUND": 3,
        "RANDOM_SEED": 1,
        "PRIMITIVE_RETRIES": 12,
        "FACTOR_COMBINATION_CAP": 4096,
        "RANDOM_SAMPLES": 4,
    },
    "TATE_SETTINGS": {"DEFAULT_EPS": "2^-20", "MAX_DIVISION_STEPS": 4000, "MAX_BASIS_SIZE": 24, "RANDOM_ELEMENTS": 6},
    "RUNNER_SETTINGS": {"MAX_WORKERS": 2},
    "REPORT_SETTINGS": {
        "REPORT_DIRECTORY": "reports",
        "TEMPLATE_DIRECTORY": "templates",
        "SCHEMA_VERSION": 1,
        "TOOL_VERSION": "0.3.0",
    },
    "LOGGING_SETTINGS": {
        "LEVEL": "INFO",
        "LOG_DIR": "LOGS",
        "FILENAME": "gradal.log",
        "MAX_BYTES": 1024,
        "BACKUP_COUNT": 1,
    },
}


@pytest.fixture
def write_config(tmp_path):
    """Фикстура: записывает словарь настроек во временный YAML и возвращает путь"""
    def _write(data):
        path = tmp_path / "config.yaml"
        path.write_text(yaml.safe_dump(data, allow_unicode=True), encoding="utf-8")
        return str(path)
    return _write


def _with(section, key, value):
    data = copy.deepcopy(VALID)
    data[section][key] = value
    return data


class TestConfigManager:
    def test_valid_config(self, write_config):
        """Тест: корректный файл загружается, настройки доступны по секциям"""
        manager = ConfigManager(write_config(VALID))
        assert manager.get_setting("RUNNER_SETTINGS", "MAX_WORKERS") == 2
        assert manager.get_section("TATE_SETTINGS")["DEFAULT_EPS"] == "2^-20"

    def test_missing_key(self, write_config):
        """Тест: отсутствующий ключ запрашивается с KeyError"""
        manager = ConfigManager(write_config(VALID))
        with pytest.raises(KeyError):
            manager.get_setting("RUNNER_SETTINGS", "TIMEOUT")
        with pytest.raises(KeyError):
            manager.get_section("TRADING")

    def test_missing_section(self, write_config):
        """Тест: отсутствие обязательной секции — ошибка валидации"""
        data = copy.deepcopy(VALID)
        del data["TATE_SETTINGS"]
        with pytest.raises(ConfigValidationError, match="TATE_SETTINGS"):
            ConfigManager(write_config(data))

    @pytest.mark.parametrize(
        "section, key, value",
        [
            ("KERNEL_SETTINGS", "DEG_BOUND", "6"),
            ("KERNEL_SETTINGS", "DIM_BOUND", True),
            ("RUNNER_SETTINGS", "MAX_WORKERS", None),
            ("REPORT_SETTINGS", "TOOL_VERSION", 3),
        ],
    )
    def test_wrong_types(self, write_config, section, key, value):
        """Тест: неверный тип параметра (bool не считается int)"""
        with pytest.raises(ConfigValidationError, match=key):
            ConfigManager(write_config(_with(section, key, value)))

    @pytest.mark.parametrize(
        "section, key",
        [("KERNEL_SETTINGS", "DEG_BOUND"), ("TATE_SETTINGS", "MAX_DIVISION_STEPS"), ("RUNNER_SETTINGS", "MAX_WORKERS")],
    )
    def test_non_positive_bounds(self, write_config, section, key):
        """Тест: границы вычислений строго положительны"""
        with pytest.raises(ConfigValidationError, match="> 0"):
            ConfigManager(write_config(_with(section, key, 0)))

    @pytest.mark.parametrize("eps", ["2^(-20)", "1/2^10", "2^-10*3^-2"])
    def test_eps_literals(self, write_config, eps):
        """Тест: допустимые литералы порога точности"""
        manager = ConfigManager(write_config(_with("TATE_SETTINGS", "DEFAULT_EPS", eps)))
        assert manager.get_setting("TATE_SETTINGS", "DEFAULT_EPS") == eps

    def test_invalid_eps(self, write_config):
        """Тест: порог точности должен быть литералом степени"""
        with pytest.raises(ConfigValidationError, match="DEFAULT_EPS"):
            ConfigManager(write_config(_with("TATE_SETTINGS", "DEFAULT_EPS", "tiny")))

    def test_missing_file(self, tmp_path):
        """Тест: отсутствующий файл конфигурации"""
        with pytest.raises(FileNotFoundError):
            ConfigManager(str(tmp_path / "absent.yaml"))


class TestKernelSettings:
    def test_defaults_from_config(self):
        """Тест: настройки ядра читаются из configs/config.yaml"""
        settings = KernelSettings.from_config()
        assert settings.deg_bound == 6
        assert settings.seed == 20240917
        assert settings.eps == "2^-20"
        assert settings.max_division_steps == 4000

    def test_overrides_ignore_none(self):
        """Тест: переопределения None не меняют значения из файла"""
        settings = KernelSettings.from_config(eps="2^-8", seed=None)
        assert settings.eps == "2^-8"
        assert settings.seed == 20240917

    def test_resolve(self, settings):
        """Тест: явные настройки используются как есть"""
        assert resolve(settings) is settings
        assert resolve(None) == KernelSettings.from_config()
