import json

from parasasaki.algebra import ALPHA, BETA
from parasasaki.report import SCHEMA, Report, color_enabled, emit_report
from parasasaki.workbench import einstein_report, soliton_report


def test_empty_report_is_headers_only():
    r = Report("empty")
    r.section("nothing")
    text = emit_report(r)
    assert text == f"schema = {SCHEMA}\nreport = empty\n\n[nothing]\n"
    assert emit_report(r) == text


def test_einstein_section_example1(ex1):
    text = emit_report(einstein_report(ex1, "gsm")[0])
    assert "a = beta^2 - beta - alpha^2\n" in text
    assert "b = alpha\n" in text
    assert "kind = para-einstein-like\n" in text


def test_soliton_section_example2(ex2):
    text = emit_report(soliton_report(ex2, "gsm", "xi")[0])
    lam = 3 * ALPHA ** 2 + ALPHA - BETA ** 2 + BETA
    assert f"lambda = {lam}\n" in text
    assert str(lam) == "-beta^2 + beta + 3*alpha^2 + alpha"


def test_structured_schema_first(ex1):
    doc = emit_report(einstein_report(ex1, "gsm")[0], "structured")
    assert doc.lstrip().startswith('{\n  "schema": "parasasaki-report/1"')
    data = json.loads(doc)
    assert data["sections"]["einstein"]["b"] == "alpha"
    assert data["report"] == "einstein"


def test_nested_sections_and_duplicate_keys():
    r = Report("t")
    s = r.section("outer")
    s.add("x", 1)
    s.add("x", 2)
    s.section("inner").add("y", BETA)
    text = emit_report(r)
    assert "x = 1\nx #2 = 2\n" in text
    assert "[outer/inner]\ny = beta\n" in text
    assert json.loads(emit_report(r, "structured"))["sections"]["outer"]["inner"] == {"y": "beta"}


def test_color_only_in_text_headers():
    r = Report("t")
    r.section("s").add("k", "v")
    assert "\x1b[1m[s]\x1b[0m" in emit_report(r, color=True)
    assert "\x1b" not in emit_report(r, "structured", color=True)


def test_color_disabled_by_environment(monkeypatch):
    class Tty:
        def isatty(self):
            return True

    monkeypatch.delenv("NO_COLOR", raising=False)
    monkeypatch.delenv("PARASASAKI_NO_COLOR", raising=False)
    assert color_enabled(Tty())
    monkeypatch.setenv("PARASASAKI_NO_COLOR", "1")
    assert not color_enabled(Tty())
