import pytest

from bilag.golden import GoldenEntry, builtin_golden, check_all, check_golden, parse_golden
from bilag.records import RecordError


def test_all_reference_components_match():
    reports = check_all()
    assert len(reports) == 19
    bad = [(r.name, r.mismatches, r.flagged) for r in reports if not r.passed]
    assert bad == []


def test_wrong_reference_value_is_reported():
    entry = GoldenEntry("L3+A1", nabla=[("e1", "e1", "e3")], flat=True)
    rep = check_golden(entry)
    assert rep.mismatches == ["nabla_{e1} e1: computed -e3, expected e3"]
    # the unlisted nabla_{e1} e2 = -e4 is flagged, not silently accepted
    assert rep.flagged == ["nabla_{e1} e2 = -e4 is not listed"]


def test_wrong_flatness_is_reported():
    rep = check_golden(GoldenEntry("A4", flat=False))
    assert not rep.passed and not rep.flat_ok


def test_listed_curvature_implies_symmetric_partners():
    # one listed component stands for its antisymmetric partner
    entry = next(e for e in builtin_golden() if e.name == "L3+L3")
    assert len(entry.curvature) == 2
    assert check_golden(entry).passed


def test_basis_label_must_be_adapted_vector():
    with pytest.raises(ValueError):
        check_golden(GoldenEntry("L3+A1", nabla=[("e1+e2", "e1", "0")]))


def test_parse_errors():
    with pytest.raises(RecordError):
        parse_golden("nabla: e1, e1 -> e2\n")
    with pytest.raises(RecordError):
        parse_golden("name: A2\nnabla: e1 -> e2\n")
    with pytest.raises(RecordError):
        parse_golden("name: A2\ncolour: blue\n")
