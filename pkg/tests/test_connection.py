import copy
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bilag import linalg
from bilag.catalog import builtin, entry
from bilag.connection import (
    ConnectionTable,
    CurvatureTensor,
    canonical_connection,
    curvature,
    curvature_identities,
    is_zero_tensor,
    levi_civita,
    nabla_omega,
    preserves,
    ricci,
    solve_D,
    torsion,
)
from bilag.lie import add
from bilag.notation import parse_vector
from bilag.symplectic import para_kaehler

F = Fraction
WITNESSES = [x.name for x in builtin() if x.has_witness]
FLAT = ["A4", "A6", "L6,1", "L6,4", "L6,5", "L6,9", "L5,2+A1", "L5,3+A1"]
vectors6 = st.lists(st.fractions(-3, 3, max_denominator=3), min_size=6, max_size=6)


def v(text, n):
    return parse_vector(text, n)


def nonzero_components(name):
    x = entry(name)
    ct = canonical_connection(x.structure())
    labels = list(x.f_text + x.g_text)
    out = {}
    for i, j in product(range(x.dim), repeat=2):
        w = ct.apply(ct.basis[i], ct.basis[j])
        if any(w):
            out[(labels[i], labels[j])] = w
    return out


def test_D_on_L3_A1():
    b = entry("L3+A1").structure()
    assert solve_D(b, v("e1", 4), v("e1", 4)) == v("-e3", 4)


def test_D_vanishes_on_abelian():
    b = entry("A6").structure()
    for x, y in product(b.algebra.basis(), repeat=2):
        assert not any(solve_D(b, x, y))


@given(vectors6, vectors6, vectors6)
def test_D_bilinear(x, y, z):
    b = entry("L6,12").structure()
    assert solve_D(b, x, add(y, z)) == add(solve_D(b, x, y), solve_D(b, x, z))


def test_L3_A1_components():
    assert nonzero_components("L3+A1") == {("e1", "e1"): v("-e3", 4), ("e1", "e2"): v("-e4", 4)}


def test_L5_2_A1_components():
    assert nonzero_components("L5,2+A1") == {
        ("e1", "e1"): v("-e4", 6),
        ("e3", "e3"): v("e5", 6),
        ("e3", "e1"): v("e6", 6),
        ("e1", "e2"): v("-e5", 6),
    }


def test_abelian_connection_is_zero():
    assert nonzero_components("A6") == {}


@pytest.mark.parametrize("name", WITNESSES)
def test_axioms(name):
    b = entry(name).structure()
    ct = canonical_connection(b)
    assert is_zero_tensor(torsion(ct))
    assert is_zero_tensor(nabla_omega(ct, b.omega))
    assert preserves(ct, b)
    lc = levi_civita(b.algebra, para_kaehler(b).metric)
    assert lc == ct


def _corrupt(ct):
    ops = copy.deepcopy(ct.ops)
    ops[0][ct.dim - 1][1] += 1  # nabla_{e1} e2 gains an e_n term
    return ConnectionTable(ct.algebra, ct.basis, ops)


def test_corrupted_connection_detected():
    b = entry("L6,5").structure()
    bad = _corrupt(canonical_connection(b))
    assert not is_zero_tensor(torsion(bad))
    assert not is_zero_tensor(nabla_omega(bad, b.omega))


def test_L3_L3_curvature():
    x = entry("L3+L3")
    b = x.structure()
    rt = curvature(canonical_connection(b))
    n = 6
    assert rt.apply(v("e1", n), v("e3", n), v("e3", n)) == v("-e5", n)
    assert rt.apply(v("e3", n), v("e1", n), v("e1", n)) == v("e6", n)


def test_L6_12_curvature():
    b = entry("L6,12").structure()
    rt = curvature(canonical_connection(b))
    x, y = v("e2-2*e1", 6), v("e2", 6)
    assert rt.apply(x, y, y) == tuple(F(208, 7) * c for c in v("e5", 6))
    assert rt.apply(y, x, x) == tuple(F(-208, 21) * c for c in v("-3*e5+e6", 6))
    assert is_zero_tensor(ricci(rt))


@pytest.mark.parametrize("name", FLAT)
def test_flat_rows(name):
    assert curvature(canonical_connection(entry(name).structure())).is_flat()


@pytest.mark.parametrize("name", WITNESSES)
def test_identities_and_ricci(name):
    b = entry(name).structure()
    ct = canonical_connection(b)
    rt = curvature(ct)
    assert curvature_identities(ct, rt, b).passed
    assert is_zero_tensor(ricci(rt))


def test_corrupted_tensor_fails_identities():
    b = entry("L6,12").structure()
    ct = canonical_connection(b)
    rt = curvature(ct)
    r = copy.deepcopy(rt.r)
    r[0][1][2][3] += 1
    assert not curvature_identities(ct, CurvatureTensor(ct, r), b).passed


def test_flat_torus_levi_civita():
    g = entry("A4").algebra
    metric = [[2, 1, 0, 0], [1, 3, 0, 0], [0, 0, -1, 0], [0, 0, 0, 5]]
    lc = levi_civita(g, metric)
    assert all(is_zero_tensor(op) for op in lc.ops)


@given(st.sampled_from(WITNESSES), st.data())
def test_metric_compatibility(name, data):
    b = entry(name).structure()
    n = b.dim
    vecs = st.lists(st.fractions(-2, 2, max_denominator=2), min_size=n, max_size=n)
    x, y, z = data.draw(vecs), data.draw(vecs), data.draw(vecs)
    g = para_kaehler(b).metric
    lc = levi_civita(b.algebra, g)

    def gf(u, w):
        return sum(u[i] * g[i][j] * w[j] for i in range(n) for j in range(n))

    # (nabla_x g)(y, z) = 0
    assert gf(lc.apply(x, y), z) + gf(y, lc.apply(x, z)) == 0


def test_levi_civita_rejects_degenerate_metric():
    with pytest.raises(ValueError):
        levi_civita(entry("A4").algebra, linalg.zeros(4, 4))
