"""
Тесты исполнения сессии и отчёта: порядок записей, статусы и коды выхода
"""
import json
import threading

import pytest

from src.session.reports.collector import ReportCollector
from src.session.reports.session_report import SessionReport
from src.session.reports.summary_generator import SummaryReportGenerator
from src.session.reports.paths import template_dir
from src.session.runner import input_hash, run_text


def _report(*statuses, error=None):
    records = [
        {"index": i, "command": "cover X", "line": i, "status": s, "result": {}, "provenance": {"oracle": "cover"}}
        for i, s in enumerate(statuses, start=1)
    ]
    return SessionReport(schema=1, version="0.3.0", provenance={"input_sha256": ""}, records=records, error=error)


class TestSessionReport:
    @pytest.mark.parametrize(
        "statuses, code",
        [
            ((), 0),
            (("pass", "complete", "inconclusive"), 0),
            (("pass", "fail"), 1),
            (("fail", "error"), 2),
        ],
    )
    def test_exit_code(self, statuses, code):
        """Тест: error доминирует над fail, inconclusive не влияет на код"""
        assert _report(*statuses).exit_code == code

    def test_parse_error_exit_code(self):
        """Тест: ошибка разбора даёт код 2 без записей"""
        assert _report(error={"type": "SessionSyntaxError", "message": "1:1: ..."}).exit_code == 2

    def test_totals_and_json(self):
        """Тест: итоги по статусам и стабильный JSON с сортировкой ключей"""
        report = _report("pass", "fail", "fail")
        assert report.totals()["fail"] == 2
        assert report.totals()["error"] == 0
        data = json.loads(report.to_json())
        assert data["tool"] == {"name": "gradal", "version": "0.3.0"}
        assert data["exit_code"] == 1
        assert "error" not in data
        assert report.to_json() == report.to_json()


class TestReportCollector:
    def test_records_follow_command_order(self):
        """Тест: записи из потоков выдаются по порядку команд"""
        collector = ReportCollector()
        threads = [
            threading.Thread(
                target=collector.add,
                kwargs=dict(index=i, command=f"cover X{i}", line=i, status="complete", result={}, provenance={}),
            )
            for i in (3, 1, 2)
        ]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert [r["index"] for r in collector.records()] == [1, 2, 3]


class TestRunText:
    def test_empty_session(self, settings):
        """Тест: пустой сценарий даёт пустой отчёт с кодом 0"""
        report = run_text("", settings)
        assert report.records == []
        assert report.error is None
        assert report.exit_code == 0
        assert report.provenance["input_sha256"] == input_hash("")
        assert report.provenance["eps"] == settings.eps

    def test_syntax_error(self, settings):
        """Тест: синтаксическая ошибка записывается с позицией, команды не выполняются"""
        report = run_text("group G = <2>;\nfield k = trivial(Q, G)\n", settings)
        assert report.exit_code == 2
        assert report.records == []
        assert report.error["type"] == "SessionSyntaxError"
        assert report.error["line"] == 3

    def test_failed_declaration_is_error_record(self, settings):
        """Тест: ошибка построения объявления даёт запись error, сессия продолжается"""
        text = "field k = padic(4);\nfield k2 = trivial(GF(2));\nbasis k radius 1 bound 2;\nbasis k2 radius 1 bound 2;\n"
        report = run_text(text, settings, max_workers=1)
        assert [r["status"] for r in report.records] == ["error", "complete"]
        assert report.records[0]["result"]["type"] == "DeclarationError"
        assert report.records[0]["line"] == 3
        assert report.exit_code == 2

    def test_summary_render(self, settings):
        """Тест: текстовая сводка содержит команды и код выхода"""
        report = run_text("field k2 = trivial(GF(2));\nbasis k2 radius 1 bound 2;\n", settings)
        text = SummaryReportGenerator(str(template_dir())).render(report)
        assert "basis k2 radius 1 bound 2" in text
        assert "код выхода: 0" in text
