# src/session/reports/paths.py
from pathlib import Path

from src.config.config import config

PROJECT_ROOT = Path(__file__).resolve().parents[3]
BASE_REPORT_DIR = Path(config.get_setting("REPORT_SETTINGS", "REPORT_DIRECTORY"))


def ensure_dir(path: Path):
    path.mkdir(parents=True, exist_ok=True)


def template_dir() -> Path:
    path = Path(config.get_setting("REPORT_SETTINGS", "TEMPLATE_DIRECTORY"))
    return path if path.is_absolute() else PROJECT_ROOT / path


def build_json_report_path(session_path: Path) -> Path:
    ensure_dir(BASE_REPORT_DIR)
    return BASE_REPORT_DIR / f"{Path(session_path).stem}.json"


def build_summary_report_path(session_path: Path) -> Path:
    ensure_dir(BASE_REPORT_DIR)
    return BASE_REPORT_DIR / f"{Path(session_path).stem}_summary.txt"
