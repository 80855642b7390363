# src/session/reports/summary_generator.py
from pathlib import Path
from typing import Optional

from jinja2 import Environment, FileSystemLoader

from src.session.reports.session_report import SessionReport
from src.utils.logger.logger import get_logger

logger = get_logger(__name__)


class SummaryReportGenerator:
    def __init__(self, template_dir: str, template_name: str = "summary.txt.j2"):
        self.env = Environment(
            loader=FileSystemLoader(template_dir),
            autoescape=False,
            trim_blocks=True,
            lstrip_blocks=True,
            keep_trailing_newline=True,
        )
        self.template_name = template_name

    def render(self, report: SessionReport) -> str:
        template = self.env.get_template(self.template_name)
        return template.render(report=report.to_dict())

    def generate(self, report: SessionReport, output_path: Optional[Path] = None) -> str:
        text = self.render(report)
        if output_path is not None:
            Path(output_path).write_text(text, encoding="utf-8")
            logger.info(f"✅ Сводка сохранена: {output_path}")
        return text
