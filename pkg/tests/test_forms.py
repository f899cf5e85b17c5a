from fractions import Fraction
from itertools import combinations
from math import comb

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from bilag.catalog import builtin, entry
from bilag.forms import (
    KForm,
    betti_numbers,
    ce_differential,
    closed_two_forms_basis,
    d_matrix,
    format_salamon,
    gram_matrix,
    one_form,
    parse_salamon,
    top_power,
    wedge,
)
from bilag.lie import LieAlgebra, bracket, check_jacobi
from bilag.poly import general_closed_family

F = Fraction
a = KForm.basis


def test_wedge_basics():
    assert wedge(a(1), a(2)) == a(1, 2)
    assert wedge(a(4), a(2)) == -1 * a(2, 4)
    assert wedge(a(1), a(1)) == KForm(2)


def test_cube_of_standard_form():
    w = a(1, 2) + a(3, 4) + a(5, 6)
    assert wedge(wedge(w, w, 6), w, 6) == 6 * a(1, 2, 3, 4, 5, 6)
    assert top_power(w, 6) == 6


def test_wedge_degree_guard():
    with pytest.raises(ValueError):
        wedge(a(1, 2), a(3, 4), 3)


def test_differential_of_alpha6_in_L6_13():
    g = entry("L6,13").algebra
    assert ce_differential(g, one_form(5)) == a(1, 5) + a(2, 3)


def test_abelian_differential_vanishes():
    g = entry("A6").algebra
    for i, j in combinations(range(1, 7), 2):
        assert not ce_differential(g, a(i, j))


def test_derivation_rule_L6_15():
    g = entry("L6,15").algebra
    d6 = a(1, 5) - a(3, 4)
    assert ce_differential(g, one_form(5)) == d6
    assert ce_differential(g, a(1, 6)) == -1 * wedge(a(1), d6)


def test_differential_matches_definition():
    # d alpha(x, y) = -alpha([x, y]) on every basis pair
    for x in builtin():
        g = x.algebra
        e = g.basis()
        for i in range(g.dim):
            d = ce_differential(g, one_form(i))
            for p, q in combinations(range(g.dim), 2):
                assert d(e[p], e[q]) == -bracket(g, e[p], e[q])[i]


def test_closed_forms_abelian():
    assert len(closed_two_forms_basis(entry("A6").algebra)) == 15


def test_closed_forms_L6_13_ties():
    fam = general_closed_family(entry("L6,13").algebra)
    params = sorted({v for p in fam.values() for v in p.variables()})
    assert params == sorted(["w12", "w13", "w23", "w14", "w24", "w15", "w16", "w26"])
    assert str(fam[(2, 3)]) == "-w16"
    assert str(fam[(3, 4)]) == "-w26"


def test_closed_forms_L6_17_minus_ties():
    fam = general_closed_family(entry("L6,17-").algebra)
    assert len(closed_two_forms_basis(entry("L6,17-").algebra)) == 8
    assert str(fam[(1, 3)]) == "w15"
    assert str(fam[(2, 3)]) == "-w26"
    assert str(fam[(2, 4)]) == "-w16"


def test_closed_forms_are_closed():
    for x in builtin():
        for w in closed_two_forms_basis(x.algebra):
            assert not ce_differential(x.algebra, w)


@pytest.mark.parametrize("name,expected", [("A6", (6, 15)), ("L6,21", (2, 3)), ("L3+A3", (5, 11))])
def test_betti_examples(name, expected):
    assert betti_numbers(entry(name).algebra) == expected


def test_betti_dimension_four_and_two():
    assert betti_numbers(entry("A2").algebra) == (2, 1)
    assert betti_numbers(entry("L4").algebra) == (2, 2)


def _rank_sympy(m):
    if not m:
        return 0
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in m]).rank()


@pytest.mark.parametrize("name", [x.name for x in builtin()])
def test_kernel_dimension_identity(name):
    g = entry(name).algebra
    n = g.dim
    b1, b2 = betti_numbers(g)
    ker2 = comb(n, 2) - _rank_sympy(d_matrix(g, 2))
    assert ker2 == b2 + (n - b1)


def _perturb(g, slot, k, delta):
    pairs = list(combinations(range(g.dim), 2))
    i, j = pairs[slot % len(pairs)]
    e = g.basis()
    brackets = {(p, q): list(bracket(g, e[p], e[q])) for p, q in pairs}
    brackets[(i, j)][k % g.dim] += delta
    return LieAlgebra.from_brackets("perturbed", g.dim, brackets)


def _d_squared_zero(g):
    return all(not ce_differential(g, ce_differential(g, one_form(i))) for i in range(g.dim))


@settings(max_examples=100)
@given(
    st.sampled_from([x.name for x in builtin()]),
    st.integers(0, 14),
    st.integers(0, 5),
    st.sampled_from([F(1), F(-1), F(2), F(-1, 2), F(3)]),
)
def test_d_squared_iff_jacobi(name, slot, k, delta):
    g = _perturb(entry(name).algebra, slot, k, delta)
    assert _d_squared_zero(g) == (check_jacobi(g) is None)


def test_salamon_roundtrip():
    for x in builtin():
        forms = parse_salamon(x.dalpha_tokens, x.dim)
        assert parse_salamon(format_salamon(forms), x.dim) == forms


def test_gram_matrix_antisymmetric():
    m = gram_matrix(a(1, 2) - 3 * a(2, 4), 4)
    assert m[0][1] == 1 and m[1][0] == -1 and m[1][3] == -3 and m[3][1] == 3
