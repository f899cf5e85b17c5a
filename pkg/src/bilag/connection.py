"""Canonical connection of a bi-Lagrangian structure and its curvature.

Everything is left-invariant, so a connection is determined by the linear
maps ``A_i = nabla_{e_i}`` (``n x n`` matrices in the e-basis).  Tensors
handed to callers are expressed on an *adapted* basis ``b_1..b_n`` (the F
basis followed by the G basis) with

    nabla_{b_i} b_j      = sum_k gamma[i][j][k] b_k
    R(b_i, b_j) b_k      = sum_l r[i][j][k][l] b_l
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Optional, Sequence

from . import linalg
from .forms import gram_matrix
from .lie import LieAlgebra, Vector, add, bracket, sub, vec
from .symplectic import BiLagrangianStructure, pairing

Tensor3 = list[list[list[Fraction]]]
Tensor4 = list[list[list[list[Fraction]]]]


def _combine(ops: Sequence[Sequence[Sequence[Fraction]]], x: Sequence[Fraction]):
    n = len(x)
    m = linalg.zeros(n, n)
    for i, xi in enumerate(x):
        if xi:
            for r in range(n):
                row = ops[i][r]
                for c in range(n):
                    if row[c]:
                        m[r][c] += xi * row[c]
    return m


@dataclass
class ConnectionTable:
    algebra: LieAlgebra
    basis: list[Vector]
    # ops[i] is nabla_{e_i} as a matrix acting on e-coordinates
    ops: list[list[list[Fraction]]]

    def __post_init__(self):
        self._to_basis = linalg.inverse(linalg.transpose(self.basis))

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def operator(self, x: Sequence) -> list[list[Fraction]]:
        return _combine(self.ops, x)

    def apply(self, x: Sequence, y: Sequence) -> Vector:
        """``nabla_x y`` for vectors in e-coordinates."""
        return tuple(linalg.matvec(self.operator(x), y))

    def coords(self, v: Sequence) -> list[Fraction]:
        return linalg.matvec(self._to_basis, v)

    @property
    def gamma(self) -> Tensor3:
        return [[self.coords(self.apply(bi, bj)) for bj in self.basis] for bi in self.basis]

    def __eq__(self, other) -> bool:
        return isinstance(other, ConnectionTable) and self.ops == other.ops

    def rebased(self, basis: Sequence[Sequence]) -> "ConnectionTable":
        return ConnectionTable(self.algebra, [vec(b) for b in basis], self.ops)


def solve_D(b: BiLagrangianStructure, x: Sequence, y: Sequence) -> Vector:
    """The vector ``D`` with ``omega(D, z) = -omega(y, [x, z])`` for all ``z``."""
    g = b.algebra
    n = g.dim
    omega = gram_matrix(b.omega, n)
    # omega(D, e_z) = sum_i D_i omega[i][z]  ->  system with matrix omega^T
    rhs = [-pairing(b.omega, y, bracket(g, x, ez)) for ez in g.basis()]
    d = linalg.solve(linalg.transpose(omega), rhs)
    if d is None:
        raise ValueError("degenerate symplectic form")
    return tuple(d)


def _nabla(b: BiLagrangianStructure, x: Vector, y: Vector) -> Vector:
    g = b.algebra
    xf, xg = b.part_f(x), b.part_g(x)
    yf, yg = b.part_f(y), b.part_g(y)
    out = b.part_f(add(solve_D(b, xf, yf), bracket(g, xg, yf)))
    out = add(out, b.part_g(add(solve_D(b, xg, yg), bracket(g, xf, yg))))
    return out


def canonical_connection(b: BiLagrangianStructure) -> ConnectionTable:
    g = b.algebra
    e = g.basis()
    ops = [linalg.transpose([list(_nabla(b, ei, ej)) for ej in e]) for ei in e]
    return ConnectionTable(g, list(b.adapted), ops)


def levi_civita(g: LieAlgebra, metric: Sequence[Sequence], basis: Optional[Sequence[Sequence]] = None) -> ConnectionTable:
    """Koszul formula for left-invariant fields:
    ``2 g(nabla_x y, z) = g([x,y],z) - g([y,z],x) + g([z,x],y)``.
    """
    n = g.dim
    gm = linalg.as_matrix(metric)
    if not linalg.is_symmetric(gm) or linalg.determinant(gm) == 0:
        raise ValueError("metric must be symmetric and non-degenerate")
    e = g.basis()

    def gform(u, v):
        return sum((u[i] * gm[i][j] * v[j] for i in range(n) if u[i] for j in range(n) if v[j]), Fraction(0))

    ops = []
    for x in e:
        cols = []
        for y in e:
            xy = bracket(g, x, y)
            rhs = [
                (gform(xy, z) - gform(bracket(g, y, z), x) + gform(bracket(g, z, x), y)) / 2
                for z in e
            ]
            # g(v, e_z) = sum_i v_i gm[i][z]
            cols.append(linalg.solve(linalg.transpose(gm), rhs))
        ops.append(linalg.transpose(cols))
    return ConnectionTable(g, [vec(v) for v in (basis or e)], ops)


def torsion(ct: ConnectionTable) -> Tensor3:
    """``T(b_i, b_j) = nabla_{b_i} b_j - nabla_{b_j} b_i - [b_i, b_j]`` in basis coordinates."""
    g = ct.algebra
    return [
        [ct.coords(sub(sub(ct.apply(x, y), ct.apply(y, x)), bracket(g, x, y))) for y in ct.basis]
        for x in ct.basis
    ]


def nabla_omega(ct: ConnectionTable, w) -> Tensor3:
    """``(nabla_{b_i} omega)(b_j, b_k) = -omega(nabla b_j, b_k) - omega(b_j, nabla b_k)``."""
    form = getattr(w, "underlying", w)
    bs = ct.basis
    return [
        [
            [-pairing(form, ct.apply(x, y), z) - pairing(form, y, ct.apply(x, z)) for z in bs]
            for y in bs
        ]
        for x in bs
    ]


def preserves(ct: ConnectionTable, b: BiLagrangianStructure) -> bool:
    e = ct.algebra.basis()
    return all(b.f.contains(ct.apply(x, y)) for x in e for y in b.f_basis) and all(
        b.g.contains(ct.apply(x, y)) for x in e for y in b.g_basis
    )


def is_zero_tensor(t) -> bool:
    if isinstance(t, (list, tuple)):
        return all(is_zero_tensor(s) for s in t)
    return t == 0


@dataclass
class CurvatureTensor:
    connection: ConnectionTable
    r: Tensor4

    def apply(self, x: Sequence, y: Sequence, z: Sequence) -> Vector:
        """``R(x, y) z`` for vectors in e-coordinates."""
        return curvature_map(self.connection, x, y, z)

    def component(self, i: int, j: int, k: int) -> Vector:
        """``R(b_i, b_j) b_k`` in e-coordinates."""
        bs = self.connection.basis
        out = [Fraction(0)] * len(bs)
        for c, b in zip(self.r[i][j][k], bs):
            if c:
                out = [o + c * x for o, x in zip(out, b)]
        return tuple(out)

    def is_flat(self) -> bool:
        return is_zero_tensor(self.r)

    def nonzero(self) -> list[tuple[int, int, int, list[Fraction]]]:
        """Nonzero ``R(b_i, b_j) b_k`` with ``i < j`` (antisymmetry gives the rest)."""
        n = len(self.r)
        return [
            (i, j, k, self.r[i][j][k])
            for i, j in combinations(range(n), 2)
            for k in range(n)
            if any(self.r[i][j][k])
        ]


def curvature_operator(ct: ConnectionTable, x: Sequence, y: Sequence):
    ax, ay = ct.operator(x), ct.operator(y)
    axy = ct.operator(bracket(ct.algebra, x, y))
    p, q = linalg.matmul(ax, ay), linalg.matmul(ay, ax)
    n = len(ax)
    return [[p[r][c] - q[r][c] - axy[r][c] for c in range(n)] for r in range(n)]


def curvature_map(ct: ConnectionTable, x, y, z) -> Vector:
    return tuple(linalg.matvec(curvature_operator(ct, x, y), z))


def curvature(ct: ConnectionTable) -> CurvatureTensor:
    bs = ct.basis
    n = len(bs)
    r: Tensor4 = [[[[Fraction(0)] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
    for i, j in combinations(range(n), 2):
        op = curvature_operator(ct, bs[i], bs[j])
        for k in range(n):
            v = ct.coords(linalg.matvec(op, bs[k]))
            r[i][j][k] = v
            r[j][i][k] = [-a for a in v]
    return CurvatureTensor(ct, r)


@dataclass
class CurvatureIdentities:
    bianchi: bool
    leafwise_flat: bool
    foliation_symmetry: bool

    @property
    def passed(self) -> bool:
        return self.bianchi and self.leafwise_flat and self.foliation_symmetry


def curvature_identities(ct: ConnectionTable, rt: CurvatureTensor, b: BiLagrangianStructure) -> CurvatureIdentities:
    """Sweep all basis triples of the adapted basis (F indices ``< n/2``)."""
    r = rt.r
    n = len(r)
    h = n // 2

    def same_leaf(i, j):
        return (i < h) == (j < h)

    def vsum(*vs):
        return [sum(t, Fraction(0)) for t in zip(*vs)]

    bianchi = all(
        not any(vsum(r[i][j][k], r[j][k][i], r[k][i][j]))
        for i, j, k in product(range(n), repeat=3)
    )
    leafwise = all(
        not any(r[i][j][k]) for i, j, k in product(range(n), repeat=3) if same_leaf(i, j)
    )
    symmetric = all(
        r[i][j][k] == r[i][k][j] for i, j, k in product(range(n), repeat=3) if same_leaf(j, k)
    )
    return CurvatureIdentities(bianchi, leafwise, symmetric)


def ricci(rt: CurvatureTensor) -> list[list[Fraction]]:
    """``Ric(b_i, b_j) = trace(z -> R(z, b_i) b_j)``."""
    r = rt.r
    n = len(r)
    return [[sum((r[k][i][j][k] for k in range(n)), Fraction(0)) for j in range(n)] for i in range(n)]
