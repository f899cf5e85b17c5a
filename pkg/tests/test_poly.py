from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from bilag.catalog import entry
from bilag.poly import (
    ParamPoly,
    determinant,
    form_matrix,
    general_closed_family,
    parametric_bracket,
    parametric_pfaffian,
    pfaffian,
    proportionality,
    pvec,
    variables,
)

F = Fraction


def test_zero_product():
    a2, b2 = variables("a2", "b2")
    assert ((a2 + b2) * 0).is_zero()


def test_cancellation():
    a2, a3, b2, b3 = variables("a2", "a3", "b2", "b3")
    assert ((a2 * b3 - a3 * b2) + (a3 * b2 - a2 * b3)).is_zero()


def test_expansion():
    w15, w16, w26 = variables("w15", "w16", "w26")
    p = (w16**2 + w26**2) * w15 - w16 * w26 * w15
    assert len(p.terms) == 3


def test_subs_and_constant():
    x, y = variables("x", "y")
    p = x * y + 3
    assert p.subs({"x": 2, "y": F(1, 2)}).constant_value() == 4
    assert p.constant_value() is None
    assert p.variables() == {"x", "y"}
    assert p.degree() == 2


def test_proportionality():
    x, y = variables("x", "y")
    assert proportionality(x * y * 6, x * y * (-2)) == -3
    assert proportionality(x + y, x - y) is None


def _vec(prefix, first=None):
    out = [ParamPoly.var(f"{prefix}{i}") for i in range(2, 7)]
    return pvec([first if first is not None else 0, *out])


def test_L4_A2_bracket():
    g = entry("L4+A2").algebra
    f1 = _vec("a", 1)
    f2 = _vec("b")
    b2, b5 = variables("b2", "b5")
    assert parametric_bracket(g, f1, f2) == pvec([0, 0, 0, 0, -b2, -b5])


def test_L6_17_plus_second_bracket():
    g = entry("L6,17+").algebra
    f1, f2 = _vec("a", 1), _vec("b")
    a2, a3, b2, b3 = variables("a2", "a3", "b2", "b3")
    got = parametric_bracket(g, f1, parametric_bracket(g, f1, f2))
    assert got == pvec([0, 0, 0, b2, a2 * b2, b3 * (a2**2 + 1) - a2 * a3 * b2])


def test_bracket_self_is_zero():
    g = entry("L6,21").algebra
    u = _vec("a", 1)
    assert all(c.is_zero() for c in parametric_bracket(g, u, u))


def test_pfaffian_L4_A2():
    g = entry("L4+A2").algebra
    w16, w25, w34 = variables("w16", "w25", "w34")
    c = proportionality(parametric_pfaffian(g, general_closed_family(g)), w16 * w25 * w34)
    assert c is not None and c != 0


def test_pfaffian_L6_17_minus():
    g = entry("L6,17-").algebra
    w14, w15, w16, w25, w26 = variables("w14", "w15", "w16", "w25", "w26")
    target = (w16**2 + w26**2) * w15 - w16 * w26 * (w25 + w14)
    c = proportionality(parametric_pfaffian(g, general_closed_family(g)), target)
    assert c is not None and c != 0


def test_pfaffian_squared_symbolic():
    names = [f"w{i}{j}" for i in range(1, 7) for j in range(i + 1, 7)]
    fam = {(int(n[1]) - 1, int(n[2]) - 1): ParamPoly.var(n) for n in names}
    m = form_matrix(fam, 6)
    assert pfaffian(m) ** 2 == determinant(m)
    # oracle: sympy's determinant of the same symbolic matrix
    syms = {n: sympy.Symbol(n) for n in names}
    sm = sympy.zeros(6, 6)
    for (i, j), p in fam.items():
        sm[i, j] = syms[str(p)]
        sm[j, i] = -syms[str(p)]
    expected = sympy.Poly(sympy.expand(sm.det()), *syms.values())
    got = determinant(m)
    assert len(got.terms) == len(expected.terms())


def test_pfaffian_odd_raises():
    with pytest.raises(ValueError):
        pfaffian([[0]])


@given(st.lists(st.integers(-3, 3), min_size=6, max_size=6))
def test_determinant_matches_numeric(vals):
    x, y = variables("x", "y")
    m = [[x, vals[0], vals[1]], [vals[2], y, vals[3]], [vals[4], vals[5], x + y]]
    sm = sympy.Matrix([[sympy.Symbol("x"), vals[0], vals[1]], [vals[2], sympy.Symbol("y"), vals[3]],
                       [vals[4], vals[5], sympy.Symbol("x") + sympy.Symbol("y")]])
    for xv, yv in ((1, 2), (F(1, 2), -3), (0, 0)):
        want = sm.det().subs({"x": sympy.Rational(str(xv)), "y": sympy.Rational(str(yv))})
        assert determinant(m).subs({"x": xv, "y": yv}).constant_value() == F(str(want))
