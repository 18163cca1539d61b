"""Report tree and its two renderings.

The text form is ``key = value`` lines under ``[section/subsection]``
headers.  The structured form is JSON whose first key is ``schema``.
Both are deterministic.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field

SCHEMA = "parasasaki-report/1"
NO_COLOR_VARS = ("PARASASAKI_NO_COLOR", "NO_COLOR")


@dataclass
class Section:
    name: str
    entries: list = field(default_factory=list)

    def add(self, key: str, value) -> None:
        keys = {k for k, _ in self.entries}
        base, i = key, 2
        while key in keys:
            key = f"{base} #{i}"
            i += 1
        self.entries.append((key, value))

    def section(self, name: str) -> "Section":
        child = Section(name)
        self.add(name, child)
        return child

    def get(self, key: str):
        for k, v in self.entries:
            if k == key:
                return v
        raise KeyError(key)


@dataclass
class Report:
    title: str
    sections: list = field(default_factory=list)

    def section(self, name: str) -> Section:
        s = Section(name)
        self.sections.append(s)
        return s

    def get(self, name: str) -> Section:
        for s in self.sections:
            if s.name == name:
                return s
        raise KeyError(name)


def color_enabled(stream) -> bool:
    if any(os.environ.get(v) for v in NO_COLOR_VARS):
        return False
    return hasattr(stream, "isatty") and stream.isatty()


def _text_lines(section: Section, prefix: str, color: bool, out: list):
    header = f"[{prefix}{section.name}]"
    out.append("")
    out.append(f"\x1b[1m{header}\x1b[0m" if color else header)
    children = []
    for key, value in section.entries:
        if isinstance(value, Section):
            children.append(value)
        else:
            out.append(f"{key} = {value}")
    for child in children:
        _text_lines(child, f"{prefix}{section.name}/", color, out)


def _structured(section: Section) -> dict:
    return {k: _structured(v) if isinstance(v, Section) else str(v) for k, v in section.entries}


def emit_report(report: Report, fmt: str = "text", color: bool = False) -> str:
    if fmt == "text":
        out = [f"schema = {SCHEMA}", f"report = {report.title}"]
        for s in report.sections:
            _text_lines(s, "", color, out)
        return "\n".join(out) + "\n"
    if fmt == "structured":
        doc = {"schema": SCHEMA, "report": report.title,
               "sections": {s.name: _structured(s) for s in report.sections}}
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    raise ValueError(f"unknown report format {fmt!r}")
