"""Seeded, budgeted search for bi-Lagrangian witnesses.

Candidates are ``n/2``-dimensional subspaces in reduced echelon form.  The
coordinate subspaces come first (lexicographic pivot order), then echelon
forms whose free entries range over a grid of small rationals, or over
seeded random draws from that grid.

A search never proves non-existence.  When nothing is found the outcome says
whether the budget ran out or the whole grid at the configured height was
exhausted.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import gcd, prod
from typing import Iterator, Optional, Sequence

from . import linalg
from .forms import KForm, gram_matrix
from .lie import LieAlgebra, Subspace, bracket, is_complementary, is_subalgebra, is_nilpotent, nilpotent_subalgebra_filter
from .symplectic import BiLagrangianStructure, Verdict, is_lagrangian, is_symplectic, verify_bilagrangian

STRATEGIES = ("coordinateFirst", "echelonGrid", "random")


@dataclass(frozen=True)
class SearchConfig:
    seed: int = 0
    # covers the whole height-2 grid in dimension 6 (48,177,200 candidates)
    budget: int = 50_000_000
    coefficient_height: int = 2
    strategy: str = "echelonGrid"

    def __post_init__(self):
        if self.budget <= 0:
            raise ValueError("budget must be positive")
        if self.coefficient_height < 1:
            raise ValueError("coefficient height must be at least 1")
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}; choose from {', '.join(STRATEGIES)}")
        if not -(2**63) <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")


@dataclass
class SearchOutcome:
    found: Optional[BiLagrangianStructure]
    candidates_tried: int
    filter_stats: dict[str, int]
    # None when found; otherwise "budget", "grid" or "coordinates"
    exhausted: Optional[str]
    height: int

    @property
    def summary(self) -> str:
        if self.found is not None:
            return f"witness found after {self.candidates_tried} candidates"
        if self.exhausted == "budget":
            return f"budget exhausted after {self.candidates_tried} candidates"
        if self.exhausted == "grid":
            return f"grid exhausted at height {self.height} after {self.candidates_tried} candidates"
        return f"coordinate subspaces exhausted after {self.candidates_tried} candidates"


def grid_values(height: int) -> list[Fraction]:
    """Rationals ``p/q`` with ``|p| <= height``, ``1 <= q <= height``, in balanced order 0, 1, -1, 2, -2, 1/2, ..."""
    vals = {Fraction(p, q) for q in range(1, height + 1) for p in range(-height, height + 1) if gcd(p, q) == 1 or p == 0}
    return sorted(vals, key=lambda x: (max(abs(x.numerator), x.denominator), x.denominator, abs(x), x < 0))


def _pivot_patterns(n: int, k: int) -> list[tuple[int, ...]]:
    return list(combinations(range(n), k))


def _free_columns(pivots: Sequence[int], n: int) -> list[list[int]]:
    ps = set(pivots)
    return [[c for c in range(p + 1, n) if c not in ps] for p in pivots]


def _row(n: int, pivot: int, cols: Sequence[int], values: Sequence[Fraction]) -> tuple[Fraction, ...]:
    r = [Fraction(0)] * n
    r[pivot] = Fraction(1)
    for c, v in zip(cols, values):
        r[c] = v
    return tuple(r)


def coordinate_subspaces(g: LieAlgebra) -> Iterator[Subspace]:
    n = g.dim
    for pivots in _pivot_patterns(n, n // 2):
        yield Subspace(g, [tuple(Fraction(int(i == p)) for i in range(n)) for p in pivots])


def enumerate_candidates(g: LieAlgebra, cfg: SearchConfig) -> Iterator[Subspace]:
    """The unpruned candidate stream: coordinate subspaces, then the grid or random phase."""
    yield from coordinate_subspaces(g)
    if cfg.strategy == "coordinateFirst":
        return
    n, k = g.dim, g.dim // 2
    grid = grid_values(cfg.coefficient_height)
    if cfg.strategy == "random":
        rng = random.Random(cfg.seed)
        patterns = _pivot_patterns(n, k)
        while True:
            pivots = rng.choice(patterns)
            rows = [_row(n, p, cols, [rng.choice(grid) for _ in cols]) for p, cols in zip(pivots, _free_columns(pivots, n))]
            yield Subspace(g, rows)
    for pivots in _pivot_patterns(n, k):
        cols = _free_columns(pivots, n)
        slots = sum(len(c) for c in cols)
        for values in product(grid, repeat=slots):
            if not any(values):
                continue  # already produced in the coordinate phase
            rows, pos = [], 0
            for p, c in zip(pivots, cols):
                rows.append(_row(n, p, c, values[pos:pos + len(c)]))
                pos += len(c)
            yield Subspace(g, rows)


class _Isotropic:
    """Grid rows satisfying ``omega(r_j, r) = 0`` against previously chosen rows.

    The free entries split into independent ones, which range over the grid,
    and dependent ones solved from the linear constraints; a row is kept when
    every dependent entry is itself a grid value.  Rows come back in the same
    order as plain nested enumeration of the grid.
    """

    def __init__(self, gram, grid: Sequence[Fraction]):
        self.gram = gram
        self.grid = list(grid)
        self.rank = {v: i for i, v in enumerate(grid)}

    def pair(self, x, y) -> Fraction:
        n = len(x)
        return sum((x[i] * self.gram[i][j] * y[j] for i in range(n) if x[i] for j in range(n) if y[j]), Fraction(0))

    def rows(self, n: int, pivot: int, cols: Sequence[int], previous: Sequence[tuple]) -> list[tuple]:
        unit = _row(n, pivot, (), ())
        # constraint j: sum_c x_c * omega(r_j, e_c) = -omega(r_j, e_pivot)
        system = []
        for r in previous:
            coeffs = [self.pair(r, _row(n, c, (), ())) for c in cols]
            system.append(coeffs + [-self.pair(r, unit)])
        if system:
            red, rk, piv = linalg.rref(system)
        else:
            red, rk, piv = [], 0, []
        if any(p == len(cols) for p in piv):
            return []  # inconsistent
        dep = piv[:rk]
        indep = [i for i in range(len(cols)) if i not in dep]
        out = []
        for values in product(self.grid, repeat=len(indep)):
            x = [Fraction(0)] * len(cols)
            for i, v in zip(indep, values):
                x[i] = v
            ok = True
            for row_i, d in enumerate(dep):
                val = red[row_i][-1] - sum((red[row_i][i] * x[i] for i in indep), Fraction(0))
                if val not in self.rank:
                    ok = False
                    break
                x[d] = val
            if ok:
                out.append(tuple(x))
        out.sort(key=lambda x: [self.rank[v] for v in x])
        return [_row(n, pivot, cols, x) for x in out]


def _forced_last_row(g: LieAlgebra, chosen: Sequence[tuple], pivots: Sequence[int], iso: _Isotropic):
    """``None`` if all brackets of ``chosen`` stay in their span, else the list of admissible last rows (0 or 1)."""
    for a, b in combinations(range(len(chosen)), 2):
        v = list(bracket(g, chosen[a], chosen[b]))
        for r, p in zip(chosen, pivots):
            if v[p]:
                f = v[p]
                v = [x - f * y for x, y in zip(v, r)]
        if not any(v):
            continue
        p = pivots[len(chosen)]
        lead = next(c for c, x in enumerate(v) if x)
        if lead != p:
            return []
        row = tuple(x / v[p] for x in v)
        if any(x not in iso.rank for x in row) or any(iso.pair(r, row) for r in chosen):
            return []
        return [row]
    return None


def _lagrangian_grid(g: LieAlgebra, w: KForm, grid: Sequence[Fraction], stats: dict, counter: list):
    """Yield isotropic grid candidates (pivots, rows) in stream order; counts pruned candidates."""
    n, k = g.dim, g.dim // 2
    iso = _Isotropic(gram_matrix(w, n), grid)
    base = len(grid)
    for pivots in _pivot_patterns(n, k):
        cols = _free_columns(pivots, n)
        below = [prod(base ** len(c) for c in cols[i + 1:]) for i in range(k)]

        def rec(i: int, chosen: list, zero_prefix: bool):
            forced = _forced_last_row(g, chosen, pivots, iso) if i == k - 1 and i > 0 else None
            if forced is None:
                options = iso.rows(n, pivots[i], cols[i], chosen)
                stage = "not lagrangian"
            else:
                # [r_a, r_b] leaves a remainder outside span(chosen): the last row must be it
                options = forced
                stage = "not subalgebra"
            done = 0  # rows of this level accounted for, in stream order

            def skip(upto: int):
                # rows done..upto-1 are pruned; row 0 is the coordinate row, counted already
                nonlocal done
                total = (upto - done) * below[i]
                if zero_prefix and done == 0 and upto > 0:
                    total -= 1
                counter[0] += total
                stats[stage] += total
                done = upto

            for r in options:
                idx = 0
                for c in cols[i]:
                    idx = idx * base + iso.rank[r[c]]
                skip(idx)
                done = idx + 1
                chosen.append(r)
                if i + 1 == k:
                    yield pivots, list(chosen)
                else:
                    yield from rec(i + 1, chosen, zero_prefix and idx == 0)
                chosen.pop()
            skip(base ** len(cols[i]))

        yield from rec(0, [], True)


def search_bilagrangian(g: LieAlgebra, w: KForm, cfg: SearchConfig = SearchConfig()) -> SearchOutcome:
    if is_symplectic(g, w) is not Verdict.YES:
        raise ValueError("search needs a symplectic form")
    if g.dim % 2:
        raise ValueError("odd dimension")
    stats = {"not subalgebra": 0, "nilpotent filter": 0, "not lagrangian": 0, "no complement": 0}
    counter = [0]
    nilpotent = is_nilpotent(g)
    accepted: list[Subspace] = []

    def outcome(found, exhausted):
        stats["no complement"] = len(accepted) - (2 if found else 0)
        return SearchOutcome(found, counter[0], dict(stats), exhausted, cfg.coefficient_height)

    def consider(s: Subspace, lagrangian_known: bool = False):
        """Run the filters; return a verified structure when ``s`` completes a pair."""
        if not is_subalgebra(s):
            stats["not subalgebra"] += 1
            return None
        if nilpotent and not nilpotent_subalgebra_filter(s):
            stats["nilpotent filter"] += 1
            return None
        if not lagrangian_known and not is_lagrangian(w, s):
            stats["not lagrangian"] += 1
            return None
        for f in accepted:
            if is_complementary(f, s):
                b = BiLagrangianStructure(g, w, list(f.basis), list(s.basis))
                if not verify_bilagrangian(g, w, b.f, b.g).passed:  # pragma: no cover - soundness guard
                    raise AssertionError("search produced an invalid witness")
                accepted.append(s)
                return b
        accepted.append(s)
        return None

    for s in coordinate_subspaces(g):
        counter[0] += 1
        b = consider(s)
        if b is not None:
            return outcome(b, None)
        if counter[0] >= cfg.budget:
            return outcome(None, "budget")

    if cfg.strategy == "coordinateFirst":
        return outcome(None, "coordinates")

    grid = grid_values(cfg.coefficient_height)
    if cfg.strategy == "random":
        stream = enumerate_candidates(g, cfg)
        for _ in coordinate_subspaces(g):
            next(stream)
        while counter[0] < cfg.budget:
            counter[0] += 1
            b = consider(next(stream))
            if b is not None:
                return outcome(b, None)
        return outcome(None, "budget")

    # Pruned candidates are counted in bulk, so the counter can jump past the
    # budget; the budget caps the index of the last candidate examined.
    for pivots, rows in _lagrangian_grid(g, w, grid, stats, counter):
        if all(x == 0 for r, p in zip(rows, pivots) for c, x in enumerate(r) if c != p):
            continue  # coordinate subspace, already considered
        if counter[0] >= cfg.budget:
            counter[0] = cfg.budget
            return outcome(None, "budget")
        counter[0] += 1
        b = consider(Subspace.from_echelon(g, rows, pivots), lagrangian_known=True)
        if b is not None:
            return outcome(b, None)
    if counter[0] > cfg.budget:
        counter[0] = cfg.budget
        return outcome(None, "budget")
    return outcome(None, "grid")


def grid_size(n: int, height: int) -> int:
    """Number of echelon candidates in the grid phase (coordinate subspaces included once)."""
    base = len(grid_values(height))
    return sum(prod(base ** len(c) for c in _free_columns(p, n)) for p in _pivot_patterns(n, n // 2))
