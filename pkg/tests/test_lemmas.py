import pytest

from bilag.catalog import entry
from bilag.lemmas import (
    Evaluator,
    LemmaError,
    builtin_lemmas,
    lemma_ids,
    parse_lemmas,
    run_check,
    verify_all,
    verify_lemma,
    verify_lemma_identity,
)
from bilag.records import RecordError


def test_all_builtin_lemmas_hold():
    reports = verify_all()
    assert len(reports) == len(lemma_ids()) >= 27
    failed = [(r.lemma_id, c.text, c.detail) for r in reports for c in r.results if not c.passed]
    assert failed == []


@pytest.mark.parametrize("lemma_id", ["L6_13_eq", "L6_21_series", "L4A2_closed", "L6_17m_closed"])
def test_named_lemmas(lemma_id):
    assert verify_lemma_identity(lemma_id).passed


def test_unknown_lemma():
    with pytest.raises(KeyError):
        verify_lemma_identity("nope")


def test_perturbed_expectation_reports_coefficient():
    lemma = builtin_lemmas()["L6_13_eq"]
    g = entry(lemma.algebra).algebra
    env = {}
    for name, expr in lemma.lets:
        env[name] = Evaluator(g, env).eval(expr)
    res = run_check(g, env, "[f1, f2] == -(b2*e4 + b4*e5 + (b5 + a2*b3 + a3*b2)*e6)")
    assert not res.passed
    assert res.detail.startswith("e6 coefficient")


def test_scalar_comparison_detail():
    g = entry("L4").algebra
    res = run_check(g, {}, "x*y + 1 == x*y + 2")
    assert not res.passed and "coefficient" in res.detail


def test_evaluator_rejects_unsafe_syntax():
    g = entry("L4").algebra
    for text in ("__import__('os')", "e1.real", "lambda: 1", "[e1 for e1 in ()]"):
        with pytest.raises(LemmaError):
            Evaluator(g).eval(text)


def test_evaluator_index_out_of_range():
    with pytest.raises(LemmaError):
        Evaluator(entry("L4").algebra).eval("e5")


def test_evaluator_basics():
    g = entry("L3+A1").algebra
    v = Evaluator(g).eval("[e1, e2]")
    assert [c.constant_value() for c in v] == [0, 0, 0, -1]
    assert Evaluator(g).eval("subs(x*y, x=2, y=3)").constant_value() == 6


def test_not_a_check():
    res = run_check(entry("L4").algebra, {}, "e1 + e2")
    assert not res.passed


def test_proportional_zero_rejected():
    res = run_check(entry("L4").algebra, {}, "proportional(x, 0)")
    assert not res.passed


def test_parse_rejects_unknown_field():
    with pytest.raises(RecordError):
        parse_lemmas("id: a\nalgebra: L4\ntitle: t\nfoo: 1\n")


def test_parse_rejects_duplicate():
    rec = "id: a\nalgebra: L4\ntitle: t\ncheck: 1 == 1\n"
    with pytest.raises(RecordError):
        parse_lemmas(rec + "\n" + rec)


def test_custom_lemma():
    lemmas = parse_lemmas("id: demo\nalgebra: L4\ntitle: demo\nlet: u = e1 + t*e2\ncheck: [u, e2] == -e3\n")
    assert verify_lemma(lemmas["demo"]).passed
