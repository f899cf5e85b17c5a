"""Symplectic forms, Lagrangian subalgebras and bi-Lagrangian structures."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import linalg
from .forms import KForm, ce_differential, gram_matrix
from .lie import LieAlgebra, Subspace, Vector, is_complementary, is_subalgebra, vec


class Verdict(enum.Enum):
    YES = "yes"
    NOT_CLOSED = "notClosed"
    DEGENERATE = "degenerate"


def is_closed(g: LieAlgebra, w: KForm) -> bool:
    return not ce_differential(g, w)


def is_symplectic(g: LieAlgebra, w: KForm) -> Verdict:
    if w.degree != 2:
        raise ValueError("symplectic forms are 2-forms")
    if not is_closed(g, w):
        return Verdict.NOT_CLOSED
    if g.dim % 2 or linalg.determinant(gram_matrix(w, g.dim)) == 0:
        return Verdict.DEGENERATE
    return Verdict.YES


@dataclass(frozen=True)
class SymplecticForm:
    underlying: KForm
    gram: tuple[tuple[Fraction, ...], ...] = field(repr=False)

    @classmethod
    def of(cls, g: LieAlgebra, w: KForm) -> "SymplecticForm":
        verdict = is_symplectic(g, w)
        if verdict is not Verdict.YES:
            raise ValueError(f"{w!r} is not symplectic on {g.name}: {verdict.value}")
        return cls(w, tuple(tuple(r) for r in gram_matrix(w, g.dim)))

    def __call__(self, x: Sequence, y: Sequence) -> Fraction:
        return sum(
            (x[i] * self.gram[i][j] * y[j] for i in range(len(x)) if x[i] for j in range(len(y)) if y[j]),
            Fraction(0),
        )


def pairing(w: KForm, x: Sequence, y: Sequence) -> Fraction:
    return sum((c * (x[i] * y[j] - x[j] * y[i]) for (i, j), c in w.coeffs.items()), Fraction(0))


def is_isotropic(w: KForm, vectors: Sequence[Sequence]) -> bool:
    return all(pairing(w, x, y) == 0 for x, y in combinations(vectors, 2))


def is_lagrangian(w: KForm | SymplecticForm, s: Subspace) -> bool:
    form = w.underlying if isinstance(w, SymplecticForm) else w
    n = s.algebra.dim
    return 2 * s.dimension == n and is_isotropic(form, s.basis)


@dataclass
class BiLagrangianReport:
    closed: bool
    nondegenerate: bool
    f_subalgebra: bool
    g_subalgebra: bool
    f_lagrangian: bool
    g_lagrangian: bool
    complementary: bool

    @property
    def passed(self) -> bool:
        return all(vars(self).values())

    def failures(self) -> list[str]:
        return [k for k, v in vars(self).items() if not v]


def verify_bilagrangian(g: LieAlgebra, w: KForm, f: Subspace, g2: Subspace) -> BiLagrangianReport:
    verdict = is_symplectic(g, w)
    return BiLagrangianReport(
        closed=verdict is not Verdict.NOT_CLOSED,
        nondegenerate=g.dim % 2 == 0 and linalg.determinant(gram_matrix(w, g.dim)) != 0,
        f_subalgebra=is_subalgebra(f),
        g_subalgebra=is_subalgebra(g2),
        f_lagrangian=is_lagrangian(w, f),
        g_lagrangian=is_lagrangian(w, g2),
        complementary=is_complementary(f, g2),
    )


class BiLagrangianStructure:
    """A verified triple (omega, F, G).

    ``f_basis`` and ``g_basis`` keep the vectors exactly as supplied (for
    example as recorded in the catalog); together they form the adapted basis on
    which connection data is expressed.
    """

    def __init__(self, algebra: LieAlgebra, omega: KForm, f_basis: Sequence[Sequence], g_basis: Sequence[Sequence]):
        self.algebra = algebra
        self.omega = omega
        self.f_basis: tuple[Vector, ...] = tuple(vec(v) for v in f_basis)
        self.g_basis: tuple[Vector, ...] = tuple(vec(v) for v in g_basis)
        self.f = Subspace(algebra, self.f_basis)
        self.g = Subspace(algebra, self.g_basis)
        report = verify_bilagrangian(algebra, omega, self.f, self.g)
        if not report.passed or len(self.f_basis) != self.f.dimension or len(self.g_basis) != self.g.dimension:
            raise ValueError(f"not a bi-Lagrangian structure on {algebra.name}: {report.failures() or 'dependent basis'}")
        self.symplectic = SymplecticForm.of(algebra, omega)
        n = algebra.dim
        # columns of the adapted basis matrix are the basis vectors
        self.adapted = list(self.f_basis + self.g_basis)
        b = linalg.transpose(self.adapted)
        binv = linalg.inverse(b)
        h = n // 2
        df = [[Fraction(int(i == j and i < h)) for j in range(n)] for i in range(n)]
        dg = [[Fraction(int(i == j and i >= h)) for j in range(n)] for i in range(n)]
        self.proj_f = linalg.matmul(linalg.matmul(b, df), binv)
        self.proj_g = linalg.matmul(linalg.matmul(b, dg), binv)
        self.to_adapted = binv

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def part_f(self, x: Sequence) -> Vector:
        return tuple(linalg.matvec(self.proj_f, x))

    def part_g(self, x: Sequence) -> Vector:
        return tuple(linalg.matvec(self.proj_g, x))

    def adapted_coords(self, x: Sequence) -> list[Fraction]:
        return linalg.matvec(self.to_adapted, x)


@dataclass(frozen=True)
class ParaKaehlerPair:
    i_operator: tuple[tuple[Fraction, ...], ...]
    metric: tuple[tuple[Fraction, ...], ...]

    def signature(self) -> tuple[int, int, int]:
        return linalg.symmetric_signature(self.metric)


def para_kaehler(b: BiLagrangianStructure) -> ParaKaehlerPair:
    """``I = P_F - P_G`` and ``g(X, Y) = omega(IX, Y)``, both in the e-basis."""
    n = b.dim
    i_op = [[b.proj_f[r][c] - b.proj_g[r][c] for c in range(n)] for r in range(n)]
    omega = gram_matrix(b.omega, n)
    metric = linalg.matmul(linalg.transpose(i_op), omega)
    return ParaKaehlerPair(tuple(tuple(r) for r in i_op), tuple(tuple(r) for r in metric))


def pfaffian(m: Sequence[Sequence]) -> Fraction:
    """Pfaffian of an antisymmetric matrix by expansion along the first row."""
    n = len(m)
    if n % 2:
        return Fraction(0)

    def pf(idx: tuple[int, ...]) -> Fraction:
        if not idx:
            return Fraction(1)
        i = idx[0]
        total = Fraction(0)
        for pos in range(1, len(idx)):
            j = idx[pos]
            if m[i][j]:
                rest = idx[1:pos] + idx[pos + 1:]
                sign = 1 if pos % 2 else -1
                total += sign * Fraction(m[i][j]) * pf(rest)
        return total

    return pf(tuple(range(n)))
