import csv
import io
import json
import re
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bilag.notation import parse_rational
from bilag.report import Report, cell, render


def test_empty_json():
    assert render(Report(), "json") == '{"sections":[]}'


def test_cells():
    assert cell(Fraction(4, 2)) == "2"
    assert cell(Fraction(-208, 21)) == "-208/21"
    assert cell(True) == "yes"
    assert cell(None) == ""
    with pytest.raises(TypeError):
        cell(0.5)


def _sample():
    rep = Report()
    s = rep.section("curvature", ["name", "curvature", "value"], verdict=True)
    s.add("L6,12", "R != 0", Fraction(208, 7))
    s.add("A6", "R = 0", 0)
    rep.section("info", ["x"]).add("a|b")
    return rep


def test_markdown_layout():
    text = render(_sample(), "md")
    assert "| name | curvature | value |" in text
    assert "| L6,12 | R != 0 | 208/7 |" in text
    assert "a\\|b" in text
    assert "verdict: pass" in text


def test_csv_has_no_floats():
    text = render(_sample(), "csv")
    rows = list(csv.reader(io.StringIO(text)))
    assert ["curvature", "L6,12", "R != 0", "208/7"] in rows
    assert not re.search(r"\d\.\d", text)


def test_render_is_stable():
    assert render(_sample(), "json") == render(_sample(), "json")
    data = json.loads(render(_sample(), "json"))
    assert data["sections"][0]["verdict"] == "pass"
    assert data["sections"][1]["verdict"] is None


def test_unknown_format():
    with pytest.raises(ValueError):
        render(Report(), "xml")


def test_row_width_checked():
    with pytest.raises(ValueError):
        Report().section("t", ["a", "b"]).add(1)


@given(st.fractions())
def test_rendered_rationals_roundtrip(x):
    assert parse_rational(cell(x)) == x
