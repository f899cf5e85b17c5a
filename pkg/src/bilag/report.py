"""Tabular reports with exact cells, rendered as JSON, CSV or Markdown.

Every cell is turned into a string before rendering: rationals as ``p/q``
(bare integers when the denominator is 1), booleans as ``yes``/``no``.  No
floating point value is ever produced.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional, Sequence

from .notation import format_rational

FORMATS = ("json", "csv", "md")


def cell(x: Any) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "yes" if x else "no"
    if isinstance(x, (int, Fraction)):
        return format_rational(x)
    if isinstance(x, float):
        raise TypeError("floating point values are not allowed in reports")
    return str(x)


@dataclass
class Section:
    title: str
    columns: Sequence[str]
    rows: list[list[str]] = field(default_factory=list)
    # None for purely informational sections
    verdict: Optional[bool] = None

    def add(self, *values: Any) -> None:
        if len(values) != len(self.columns):
            raise ValueError(f"{self.title}: expected {len(self.columns)} cells, got {len(values)}")
        self.rows.append([cell(v) for v in values])


@dataclass
class Report:
    sections: list[Section] = field(default_factory=list)

    def section(self, title: str, columns: Sequence[str], verdict: Optional[bool] = None) -> Section:
        s = Section(title, list(columns), verdict=verdict)
        self.sections.append(s)
        return s

    @property
    def passed(self) -> bool:
        return all(s.verdict is not False for s in self.sections)


def _verdict(v: Optional[bool]) -> Optional[str]:
    return None if v is None else ("pass" if v else "fail")


def render_json(report: Report) -> str:
    data = {
        "sections": [
            {"title": s.title, "columns": list(s.columns), "rows": s.rows, "verdict": _verdict(s.verdict)}
            for s in report.sections
        ]
    }
    return json.dumps(data, separators=(",", ":"), ensure_ascii=False)


def render_csv(report: Report) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for k, s in enumerate(report.sections):
        if k:
            w.writerow([])
        w.writerow(["section", *s.columns])
        for row in s.rows:
            w.writerow([s.title, *row])
        if s.verdict is not None:
            w.writerow([s.title, "verdict", _verdict(s.verdict)])
    return buf.getvalue()


def _md_escape(text: str) -> str:
    return text.replace("|", "\\|")


def render_md(report: Report) -> str:
    out = []
    for s in report.sections:
        out.append(f"## {s.title}")
        out.append("")
        if s.columns:
            out.append("| " + " | ".join(_md_escape(c) for c in s.columns) + " |")
            out.append("|" + "|".join("---" for _ in s.columns) + "|")
            for row in s.rows:
                out.append("| " + " | ".join(_md_escape(c) for c in row) + " |")
            out.append("")
        if s.verdict is not None:
            out.append(f"verdict: {_verdict(s.verdict)}")
            out.append("")
    return "\n".join(out)


def render(report: Report, fmt: str = "md") -> str:
    if fmt == "json":
        return render_json(report)
    if fmt == "csv":
        return render_csv(report)
    if fmt == "md":
        return render_md(report)
    raise ValueError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")
