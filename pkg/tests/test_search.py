from fractions import Fraction
from itertools import islice

import pytest

from bilag.catalog import entry
from bilag.forms import KForm
from bilag.lie import Subspace, is_complementary, is_nilpotent, is_subalgebra, nilpotent_subalgebra_filter
from bilag.notation import parse_vector
from bilag.search import (
    SearchConfig,
    enumerate_candidates,
    grid_size,
    grid_values,
    search_bilagrangian,
    _free_columns,
    _pivot_patterns,
)
from bilag.symplectic import is_lagrangian, verify_bilagrangian

F = Fraction


def span(name, *texts):
    x = entry(name)
    return Subspace(x.algebra, [parse_vector(t, x.dim) for t in texts])


def test_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(budget=0)
    with pytest.raises(ValueError):
        SearchConfig(coefficient_height=0)
    with pytest.raises(ValueError):
        SearchConfig(strategy="bogus")
    with pytest.raises(ValueError):
        SearchConfig(seed=2**64)


def test_grid_order():
    assert grid_values(1) == [0, 1, -1]
    assert grid_values(2) == [0, 1, -1, 2, -2, F(1, 2), F(-1, 2)]


def test_coordinate_phase_order():
    g = entry("A4").algebra
    first = list(islice(enumerate_candidates(g, SearchConfig(strategy="coordinateFirst")), 3))
    assert first == [span("A4", "e1", "e2"), span("A4", "e1", "e3"), span("A4", "e1", "e4")]
    assert len(list(enumerate_candidates(g, SearchConfig(strategy="coordinateFirst")))) == 6


def test_random_stream_deterministic():
    g = entry("L6,12").algebra
    cfg = SearchConfig(strategy="random", seed=42)
    a = list(islice(enumerate_candidates(g, cfg), 200))
    b = list(islice(enumerate_candidates(g, cfg), 200))
    assert a == b
    c = list(islice(enumerate_candidates(g, SearchConfig(strategy="random", seed=43)), 200))
    assert a != c


def test_height_one_grid_counts():
    g = entry("L6,21").algebra
    stream = list(enumerate_candidates(g, SearchConfig(coefficient_height=1)))
    coords = stream[:20]
    assert len(stream) == grid_size(6, 1) == 33880
    # every free entry is in {-1, 0, 1}; pivot entries are 1
    by_pattern = {}
    for s in stream[20:]:
        rows = s.basis
        pivots = tuple(next(i for i, x in enumerate(r) if x) for r in rows)
        assert all(r[p] == 1 for r, p in zip(rows, pivots))
        assert all(x in (-1, 0, 1) for r in rows for x in r)
        by_pattern[pivots] = by_pattern.get(pivots, 0) + 1
    for pivots in _pivot_patterns(6, 3):
        slots = sum(len(c) for c in _free_columns(pivots, 6))
        assert by_pattern.get(pivots, 0) + 1 == 3**slots  # +1: the coordinate subspace
    assert len(set(coords)) == 20


def test_A4_found_in_coordinate_phase():
    x = entry("A4")
    out = search_bilagrangian(x.algebra, x.omega, SearchConfig(strategy="coordinateFirst"))
    assert out.found is not None and out.candidates_tried <= 6
    # the first completed pair in stream order
    assert out.found.f == span("A4", "e1", "e4") and out.found.g == span("A4", "e2", "e3")
    # the tabulated pair is also made of coordinate Lagrangian subalgebras
    f, g = span("A4", "e1", "e3"), span("A4", "e2", "e4")
    assert f in list(enumerate_candidates(x.algebra, SearchConfig(strategy="coordinateFirst")))
    assert verify_bilagrangian(x.algebra, x.omega, f, g).passed


@pytest.mark.parametrize("height", [1, 2])
def test_L4_has_no_witness_in_grid(height):
    x = entry("L4")
    out = search_bilagrangian(x.algebra, x.omega, SearchConfig(coefficient_height=height))
    assert out.found is None
    assert out.exhausted == "grid"
    assert out.candidates_tried == grid_size(4, height)
    assert sum(out.filter_stats.values()) == out.candidates_tried


def test_L4_outcomes_by_strategy():
    x = entry("L4")
    assert search_bilagrangian(x.algebra, x.omega, SearchConfig(strategy="coordinateFirst")).exhausted == "coordinates"
    out = search_bilagrangian(x.algebra, x.omega, SearchConfig(strategy="random", budget=500))
    assert (out.found, out.exhausted, out.candidates_tried) == (None, "budget", 500)
    out = search_bilagrangian(x.algebra, x.omega, SearchConfig(budget=50))
    assert (out.found, out.exhausted, out.candidates_tried) == (None, "budget", 50)


def test_L6_10_height_one():
    x = entry("L6,10")
    out = search_bilagrangian(x.algebra, x.omega, SearchConfig(coefficient_height=1))
    b = out.found
    assert b is not None
    assert verify_bilagrangian(x.algebra, x.omega, b.f, b.g).passed
    assert b.f == x.witness[0]


def test_search_is_deterministic():
    x = entry("L6,2")
    cfg = SearchConfig(coefficient_height=1)
    a = search_bilagrangian(x.algebra, x.omega, cfg)
    b = search_bilagrangian(x.algebra, x.omega, cfg)
    assert a.candidates_tried == b.candidates_tried
    assert a.filter_stats == b.filter_stats
    assert (a.found.f, a.found.g) == (b.found.f, b.found.g)


def test_rejects_non_symplectic_form():
    x = entry("A4")
    with pytest.raises(ValueError):
        search_bilagrangian(x.algebra, KForm.basis(1, 2), SearchConfig())


def _naive(g, w, cfg):
    """Unpruned reference: walk the plain stream with the same filters."""
    nilpotent = is_nilpotent(g)
    accepted = []
    for index, s in enumerate(enumerate_candidates(g, cfg), 1):
        if not is_subalgebra(s) or (nilpotent and not nilpotent_subalgebra_filter(s)) or not is_lagrangian(w, s):
            continue
        for f in accepted:
            if is_complementary(f, s):
                return index, f, s
        accepted.append(s)
    return None


@pytest.mark.parametrize("name", ["A4", "L3+A1", "L3+L3", "L6,10", "L5,4+A1", "L6,16"])
def test_pruned_search_matches_unpruned_stream(name):
    x = entry(name)
    cfg = SearchConfig(coefficient_height=1)
    out = search_bilagrangian(x.algebra, x.omega, cfg)
    index, f, s = _naive(x.algebra, x.omega, cfg)
    assert out.candidates_tried == index
    assert (out.found.f, out.found.g) == (f, s)


@pytest.mark.parametrize("name", ["L6,2", "L6,6", "L6,11"])
def test_pruned_search_matches_unpruned_stream_deep(name):
    # the witness sits deep in the grid, past most pruned subtrees
    x = entry(name)
    cfg = SearchConfig(coefficient_height=1)
    out = search_bilagrangian(x.algebra, x.omega, cfg)
    index, f, s = _naive(x.algebra, x.omega, cfg)
    assert out.candidates_tried == index
    assert (out.found.f, out.found.g) == (f, s)


def test_random_strategy_finds_abelian_witness():
    x = entry("A6")
    out = search_bilagrangian(x.algebra, x.omega, SearchConfig(strategy="random", seed=7, budget=1000))
    assert out.found is not None
