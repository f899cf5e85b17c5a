"""Lie algebras given by exact structure constants, and subspaces of them.

Vectors are tuples of :class:`~fractions.Fraction` on the basis
``e_1..e_n`` (stored 0-based).  Structure constants follow
``[e_i, e_j] = sum_k c[k][i][j] e_k``.  When an algebra is built from its
differentials, the coefficient of ``alpha_{jk}`` in ``d alpha_i`` equals
``-c[i][j][k]``, i.e. ``d alpha(x, y) = -alpha([x, y])``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Optional, Sequence

from . import linalg

Vector = tuple[Fraction, ...]


def vec(coords: Iterable) -> Vector:
    return tuple(Fraction(x) for x in coords)


def basis_vector(n: int, i: int) -> Vector:
    """``e_{i+1}`` in dimension ``n`` (0-based index)."""
    return tuple(Fraction(int(k == i)) for k in range(n))


def add(x: Vector, y: Vector) -> Vector:
    return tuple(a + b for a, b in zip(x, y))


def sub(x: Vector, y: Vector) -> Vector:
    return tuple(a - b for a, b in zip(x, y))


def scale(c, x: Vector) -> Vector:
    c = Fraction(c)
    return tuple(c * a for a in x)


def is_zero(x: Vector) -> bool:
    return not any(x)


@dataclass(frozen=True)
class LieAlgebra:
    name: str
    dim: int
    # c[k][i][j]: e_k-coefficient of [e_i, e_j]; antisymmetric in (i, j)
    c: tuple[tuple[tuple[Fraction, ...], ...], ...] = field(repr=False)

    def __post_init__(self):
        n = self.dim
        if len(self.c) != n or any(len(m) != n or any(len(r) != n for r in m) for m in self.c):
            raise ValueError(f"{self.name}: structure tensor must be {n}x{n}x{n}")
        for k in range(n):
            for i in range(n):
                if self.c[k][i][i] != 0:
                    raise ValueError(f"{self.name}: [e{i+1},e{i+1}] has nonzero e{k+1} part")
                for j in range(i + 1, n):
                    if self.c[k][i][j] != -self.c[k][j][i]:
                        raise ValueError(f"{self.name}: structure constants not antisymmetric")
        terms = tuple(
            (i, j, k, self.c[k][i][j])
            for i, j in combinations(range(n), 2)
            for k in range(n)
            if self.c[k][i][j] != 0
        )
        object.__setattr__(self, "_terms", terms)

    @classmethod
    def from_brackets(cls, name: str, dim: int, brackets: Mapping[tuple[int, int], Sequence]) -> "LieAlgebra":
        """Build from ``{(i, j): [e_i, e_j]}`` with 0-based ``i < j``; missing pairs commute."""
        c = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), v in brackets.items():
            if not 0 <= i < j < dim:
                raise ValueError(f"bad bracket slot {(i, j)}")
            for k, x in enumerate(v):
                c[k][i][j] = Fraction(x)
                c[k][j][i] = -Fraction(x)
        return cls(name, dim, tuple(tuple(tuple(r) for r in m) for m in c))

    @classmethod
    def from_differentials(cls, name: str, dim: int, dalpha: Sequence[Mapping[tuple[int, int], Fraction]]) -> "LieAlgebra":
        """Build from ``d alpha_i`` given as ``{(j, k): coeff}`` (0-based, ``j < k``)."""
        if len(dalpha) != dim:
            raise ValueError(f"{name}: expected {dim} differentials, got {len(dalpha)}")
        brackets: dict[tuple[int, int], list[Fraction]] = {}
        for i, form in enumerate(dalpha):
            for (j, k), coeff in form.items():
                if coeff:
                    brackets.setdefault((j, k), [Fraction(0)] * dim)[i] -= Fraction(coeff)
        return cls.from_brackets(name, dim, brackets)

    def differentials(self) -> list[dict[tuple[int, int], Fraction]]:
        out: list[dict[tuple[int, int], Fraction]] = [{} for _ in range(self.dim)]
        for i, j, k, x in self._terms:
            out[k][(i, j)] = -x
        return out

    def basis(self) -> list[Vector]:
        return [basis_vector(self.dim, i) for i in range(self.dim)]

    def zero(self) -> Vector:
        return (Fraction(0),) * self.dim

    def is_abelian(self) -> bool:
        return not self._terms


def bracket(g: LieAlgebra, x: Sequence, y: Sequence) -> Vector:
    if len(x) != g.dim or len(y) != g.dim:
        raise ValueError(f"dimension mismatch: {len(x)}, {len(y)} vs {g.dim}")
    out = [Fraction(0)] * g.dim
    for i, j, k, c in g._terms:
        w = x[i] * y[j] - x[j] * y[i]
        if w:
            out[k] += c * w
    return tuple(out)


def check_jacobi(g: LieAlgebra) -> Optional[tuple[int, int, int]]:
    """``None`` if the Jacobi identity holds, else the first failing triple ``(i, j, k)`` (0-based)."""
    e = g.basis()
    for i, j, k in combinations(range(g.dim), 3):
        s = add(
            add(bracket(g, e[i], bracket(g, e[j], e[k])), bracket(g, e[j], bracket(g, e[k], e[i]))),
            bracket(g, e[k], bracket(g, e[i], e[j])),
        )
        if not is_zero(s):
            return (i, j, k)
    return None


def is_isomorphism(src: LieAlgebra, dst: LieAlgebra, m: Sequence[Sequence]) -> bool:
    """True iff the matrix ``m`` (columns = images of the ``src`` basis) is a Lie algebra isomorphism."""
    n = src.dim
    if dst.dim != n or linalg.determinant(m) == 0:
        return False
    cols = [tuple(Fraction(m[r][c]) for r in range(n)) for c in range(n)]

    def image(v):
        return tuple(sum((v[k] * cols[k][r] for k in range(n)), Fraction(0)) for r in range(n))

    return all(
        image(bracket(src, basis_vector(n, i), basis_vector(n, j))) == bracket(dst, cols[i], cols[j])
        for i, j in combinations(range(n), 2)
    )


def span_brackets(g: LieAlgebra, xs: Sequence[Vector], ys: Sequence[Vector]) -> list[Vector]:
    """Echelon basis of ``span{[x, y]}``."""
    vs = [bracket(g, x, y) for x in xs for y in ys]
    return [tuple(r) for r in linalg.row_space(vs)] if vs else []


def lower_central_series(g: LieAlgebra) -> list[int]:
    """Dimensions of ``g, [g,g], [g,[g,g]], ...`` until the chain stabilizes.

    Ends in 0 exactly when ``g`` is nilpotent.
    """
    cur = g.basis()
    dims = [g.dim]
    while cur:
        nxt = span_brackets(g, g.basis(), cur)
        if len(nxt) == len(cur):
            break
        dims.append(len(nxt))
        cur = nxt
    return dims


def is_nilpotent(g: LieAlgebra) -> bool:
    return lower_central_series(g)[-1] == 0


class Subspace:
    """A subspace of ``g`` with its basis kept in reduced echelon form."""

    __slots__ = ("algebra", "basis", "pivots")

    def __init__(self, algebra: LieAlgebra, vectors: Iterable[Sequence]):
        rows = [vec(v) for v in vectors]
        if any(len(r) != algebra.dim for r in rows):
            raise ValueError(f"vectors must have length {algebra.dim}")
        if rows:
            red, r, piv = linalg.rref(rows)
            self.basis = tuple(tuple(x) for x in red[:r])
            self.pivots = tuple(piv)
        else:
            self.basis, self.pivots = (), ()
        self.algebra = algebra

    @classmethod
    def from_echelon(cls, algebra: LieAlgebra, rows: Sequence[Vector], pivots: Sequence[int]) -> "Subspace":
        """Trusted constructor for rows already in reduced echelon form."""
        s = cls.__new__(cls)
        s.algebra, s.basis, s.pivots = algebra, tuple(rows), tuple(pivots)
        return s

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return len(self.basis)

    def __eq__(self, other) -> bool:
        return isinstance(other, Subspace) and self.basis == other.basis and self.algebra.dim == other.algebra.dim

    def __hash__(self) -> int:
        return hash(self.basis)

    def __repr__(self) -> str:
        from .notation import format_vector

        return "Subspace{" + ", ".join(format_vector(b) for b in self.basis) + "}"

    def contains(self, v: Sequence) -> bool:
        v = vec(v)
        if is_zero(v):
            return True
        # reduce against the echelon basis; zero remainder means membership
        rest = list(v)
        for row, p in zip(self.basis, self.pivots):
            f = rest[p]
            if f:
                rest = [a - f * b for a, b in zip(rest, row)]
        return not any(rest)


def is_subalgebra(s: Subspace) -> bool:
    g = s.algebra
    return all(s.contains(bracket(g, x, y)) for x, y in combinations(s.basis, 2))


def derived(s: Subspace) -> list[Vector]:
    return span_brackets(s.algebra, s.basis, s.basis)


def nilpotent_subalgebra_filter(s: Subspace) -> bool:
    """Necessary conditions on a subalgebra of a nilpotent Lie algebra.

    ``dim [s,s] <= dim s - 2`` and, for ``dim s == 3``, ``[s,[s,s]] = 0``.
    """
    if not is_subalgebra(s):
        raise ValueError("filter applies to subalgebras only")
    d = derived(s)
    if s.dimension >= 2 and len(d) > s.dimension - 2:
        return False
    if s.dimension == 3 and span_brackets(s.algebra, s.basis, d):
        return False
    return True


def is_complementary(f: Subspace, g2: Subspace) -> bool:
    n = f.algebra.dim
    if f.dimension + g2.dimension != n:
        return False
    return linalg.rank(list(f.basis) + list(g2.basis)) == n
