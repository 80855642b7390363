import argparse
import sys
from pathlib import Path


# ====================================================
# Основная функция
# ====================================================
def main(argv=None) -> int:
    # Загружаем и валидируем конфигурацию
    # ====================================================
    from src.config.config import config
    # ------------------------------------------
    # аргументы командной строки
    parser = argparse.ArgumentParser(
        prog="gradal",
        description="Ядро градуированной коммутативной алгебры: исполнение сценариев сессий (.grd).",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    run_parser = subparsers.add_parser("run", help="Исполнить сценарий сессии и записать отчёт")
    run_parser.add_argument("session", type=Path, help="Файл сценария (.grd)")
    run_parser.add_argument(
        "--eps",
        default=None,
        help=f"Порог точности рядов, литерал степени или 'exact' (по умолчанию {config.get_setting('TATE_SETTINGS', 'DEFAULT_EPS')})",
    )
    run_parser.add_argument("--json", type=Path, default=None, help="Путь JSON-отчёта")
    run_parser.add_argument("--summary", type=Path, default=None, help="Путь текстовой сводки")
    run_parser.add_argument(
        "--deg-bound",
        type=int,
        default=None,
        help=f"Граница степеней расширений (по умолчанию {config.get_setting('KERNEL_SETTINGS', 'DEG_BOUND')})",
    )

    args = parser.parse_args(argv)

    # Логирование
    # ====================================================
    from src.utils.logger.logger import get_logger
    logger = get_logger(__name__)

    if args.deg_bound is not None and args.deg_bound <= 0:
        parser.error("--deg-bound должен быть > 0")

    from src.kernel.core.settings import KernelSettings
    from src.session.reports.paths import build_json_report_path, build_summary_report_path, ensure_dir, template_dir
    from src.session.reports.summary_generator import SummaryReportGenerator
    from src.session.runner import run_text

    try:
        text = args.session.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        logger.error(f"❌ Не удалось прочитать сценарий {args.session}: {e}")
        return 2

    settings = KernelSettings.from_config(eps=args.eps, deg_bound=args.deg_bound)
    logger.info(f"Запуск сессии {args.session}...")
    report = run_text(text, settings)

    json_path = args.json or build_json_report_path(args.session)
    ensure_dir(json_path.parent)
    json_path.write_text(report.to_json(), encoding="utf-8")
    logger.info(f"✅ JSON-отчёт сохранён: {json_path}")

    summary_path = args.summary or build_summary_report_path(args.session)
    ensure_dir(summary_path.parent)
    print(SummaryReportGenerator(str(template_dir())).generate(report, summary_path), end="")

    logger.info(f"Сессия завершена с кодом {report.exit_code}.")
    return report.exit_code


# Точка входа
if __name__ == "__main__":
    sys.exit(main())
