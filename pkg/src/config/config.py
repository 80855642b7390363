"""
Конфигурация gradal: загрузка configs/config.yaml и проверка по схеме SCHEMA.
Модуль создаёт синглтон config при импорте; ошибки загрузки останавливают программу.
"""
import os
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

import yaml

PROJECT_ROOT = Path(__file__).resolve().parents[2]


def default_config_path() -> str:
    """configs/config.yaml в корне проекта, иначе в текущей директории."""
    candidate = PROJECT_ROOT / "configs" / "config.yaml"
    if candidate.exists():
        return str(candidate)
    return os.path.join(os.getcwd(), "configs", "config.yaml")


# Литерал степени: 2^-20, 2^(-1/2)*3, 1/2^10
_EPS_PATTERN = re.compile(r"^\s*\d+(/\d+)?(\^\(?-?\d+(/\d+)?\)?)?(\s*\*\s*\d+(/\d+)?(\^\(?-?\d+(/\d+)?\)?)?)*\s*$")
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass(frozen=True)
class Rule:
    kind: type
    positive: bool = False
    check: Optional[Callable[[Any], Optional[str]]] = None


def _degree_literal(value: str) -> Optional[str]:
    if _EPS_PATTERN.match(value):
        return None
    return f"'{value}' не является литералом степени (пример: 2^-20)"


def _log_level(value: str) -> Optional[str]:
    return None if value.upper() in LOG_LEVELS else f"уровень '{value}' не из {LOG_LEVELS}"


# ==========================
# Схема config.yaml
# ==========================
SCHEMA: Dict[str, Dict[str, Rule]] = {
    "KERNEL_SETTINGS": {
        "DEG_BOUND": Rule(int, positive=True),
        "DIM_BOUND": Rule(int, positive=True),
        "RANDOM_SEED": Rule(int),
        "PRIMITIVE_RETRIES": Rule(int, positive=True),
        "FACTOR_COMBINATION_CAP": Rule(int, positive=True),
        "RANDOM_SAMPLES": Rule(int),
    },
    "TATE_SETTINGS": {
        "DEFAULT_EPS": Rule(str, check=_degree_literal),
        "MAX_DIVISION_STEPS": Rule(int, positive=True),
        "MAX_BASIS_SIZE": Rule(int, positive=True),
        "RANDOM_ELEMENTS": Rule(int),
    },
    "RUNNER_SETTINGS": {
        "MAX_WORKERS": Rule(int, positive=True),
    },
    "REPORT_SETTINGS": {
        "REPORT_DIRECTORY": Rule(str),
        "TEMPLATE_DIRECTORY": Rule(str),
        "SCHEMA_VERSION": Rule(int),
        "TOOL_VERSION": Rule(str),
    },
    "LOGGING_SETTINGS": {
        "LEVEL": Rule(str),
        "LOG_DIR": Rule(str),
        "FILENAME": Rule(str),
        "MAX_BYTES": Rule(int, positive=True),
        "BACKUP_COUNT": Rule(int),
    },
}

# Нарушение этих проверок только предупреждает
SOFT_CHECKS = {("LOGGING_SETTINGS", "LEVEL"): _log_level}


class ConfigValidationError(Exception):
    """Файл конфигурации не прошёл проверку; сообщение перечисляет все нарушения."""


class ConfigManager:
    """Загрузка config.yaml и доступ к секциям."""

    def __init__(self, config_path: Optional[str] = None):
        self.config_path = config_path or default_config_path()
        self._config = self._load_config()
        self._validate_config()

    def _load_config(self) -> dict:
        if not os.path.exists(self.config_path):
            raise FileNotFoundError(f"❌ Нет файла конфигурации: {self.config_path}")
        with open(self.config_path, "r", encoding="utf-8") as file:
            try:
                data = yaml.safe_load(file)
            except yaml.YAMLError as e:
                raise yaml.YAMLError(f"❌ {self.config_path} не разбирается как YAML: {e}")
        print(f"✅ Конфигурация прочитана: {self.config_path}")
        return data or {}

    # ------------------------
    # Проверка
    # ------------------------
    @staticmethod
    def _problem(section: str, key: str, value: Any, rule: Rule) -> Optional[str]:
        where = f"[{section}][{key}]"
        # bool наследует int, но числом настройки не считается
        if value is None or isinstance(value, bool) or not isinstance(value, rule.kind):
            got = "None" if value is None else type(value).__name__
            return f"{where}: ожидается {rule.kind.__name__}, получено {got}"
        if rule.positive and value <= 0:
            return f"{where} должен быть > 0 (сейчас {value})"
        if rule.check is not None:
            message = rule.check(value)
            if message:
                return f"{where}: {message}"
        return None

    def _validate_config(self):
        errors: List[str] = []
        for section, rules in SCHEMA.items():
            values = self._config.get(section)
            if not isinstance(values, dict):
                errors.append(f"Нет секции {section}")
                continue
            for key, rule in rules.items():
                if key not in values:
                    errors.append(f"Нет параметра [{section}][{key}]")
                    continue
                problem = self._problem(section, key, values[key], rule)
                if problem:
                    errors.append(problem)

        for (section, key), check in SOFT_CHECKS.items():
            value = self._config.get(section, {}).get(key)
            message = check(value) if isinstance(value, str) else None
            if message:
                print(f"⚠️ [{section}][{key}]: {message}")

        if errors:
            lines = "\n".join(f"- {e}" for e in errors)
            raise ConfigValidationError(f"\n❌ config.yaml содержит ошибки ({len(errors)}):\n{lines}")
        print("✅ Конфигурация проверена.")

    # ------------------------
    # Доступ
    # ------------------------
    def get_section(self, section: str, logger=None) -> dict:
        try:
            return self._config[section]
        except KeyError:
            if logger:
                logger.error(f"❌ В конфигурации нет секции '{section}'")
            raise KeyError(f"В конфигурации нет секции '{section}'") from None

    def get_setting(self, section: str, key: str, logger=None):
        values = self.get_section(section, logger)
        if key not in values:
            if logger:
                logger.error(f"❌ В секции '{section}' нет параметра '{key}'")
            raise KeyError(f"В секции '{section}' нет параметра '{key}'")
        return values[key]


try:
    config = ConfigManager()
except (FileNotFoundError, yaml.YAMLError, ConfigValidationError) as e:
    print(f"\nFATAL ERROR: {e}")
    raise SystemExit(1)
