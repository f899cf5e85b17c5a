"""Dense exact linear algebra over the rationals.

Matrices are plain row-major sequences of rows; every entry is coerced to
:class:`fractions.Fraction`, so normalization (reduced p/q, positive
denominator) comes for free after every operation.  Row reduction is the
single workhorse: rank, kernels, membership and solving all go through
:func:`rref`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

Matrix = list[list[Fraction]]


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    m = [[Fraction(x) for x in row] for row in rows]
    if m and any(len(r) != len(m[0]) for r in m):
        raise ValueError("ragged matrix")
    return m


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> Matrix:
    return [[Fraction(0)] * cols for _ in range(rows)]


def transpose(m: Sequence[Sequence[Fraction]]) -> Matrix:
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> Matrix:
    if a and len(a[0]) != len(b):
        raise ValueError(f"shape mismatch: {len(a)}x{len(a[0])} @ {len(b)}x?")
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col) if x and y), Fraction(0)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> list[Fraction]:
    return [sum((x * y for x, y in zip(row, v) if x and y), Fraction(0)) for row in a]


def rref(m: Sequence[Sequence]) -> tuple[Matrix, int, list[int]]:
    """Reduced row-echelon form.

    Returns ``(reduced, rank, pivot_columns)``.  The input is not modified.
    """
    a = as_matrix(m)
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, r, pivots


def rank(m: Sequence[Sequence]) -> int:
    return rref(m)[1] if m else 0


def row_space(m: Sequence[Sequence]) -> Matrix:
    """Nonzero rows of the reduced echelon form: a canonical basis of the row span."""
    if not m:
        return []
    red, r, _ = rref(m)
    return red[:r]


def nullspace(m: Sequence[Sequence], ncols: Optional[int] = None) -> Matrix:
    """Basis of {x : m x = 0}, one vector per free column, echelonized."""
    if not m:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        return identity(ncols)
    red, r, pivots = rref(m)
    n = len(red[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * n
        v[fcol] = Fraction(1)
        for row, pc in zip(red[:r], pivots):
            v[pc] = -row[fcol]
        basis.append(v)
    return row_space(basis) if basis else []


def solve(a: Sequence[Sequence], b: Sequence) -> Optional[list[Fraction]]:
    """A solution of ``a x = b`` or ``None`` when inconsistent.

    Free variables are set to zero, so the answer is unique whenever ``a``
    has full column rank.
    """
    a = as_matrix(a)
    if len(a) != len(b):
        raise ValueError(f"dimension mismatch: {len(a)} rows vs rhs of length {len(b)}")
    ncols = len(a[0]) if a else 0
    aug = [row + [Fraction(x)] for row, x in zip(a, b)]
    red, r, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, pc in zip(red[:r], pivots):
        x[pc] = row[ncols]
    return x


def inverse(m: Sequence[Sequence]) -> Matrix:
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("inverse of a non-square matrix")
    aug = [list(row) + e for row, e in zip(as_matrix(m), identity(n))]
    red, r, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


def determinant(m: Sequence[Sequence]) -> Fraction:
    """Exact determinant by pivoted Gaussian elimination."""
    a = as_matrix(m)
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("determinant of a non-square matrix")
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        inv = 1 / a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


def is_symmetric(m: Sequence[Sequence]) -> bool:
    n = len(m)
    return all(len(row) == n for row in m) and all(
        m[i][j] == m[j][i] for i in range(n) for j in range(i + 1, n)
    )


def symmetric_signature(m: Sequence[Sequence]) -> tuple[int, int, int]:
    """Sylvester inertia ``(positives, negatives, zeros)`` of a symmetric matrix.

    Symmetric elimination by congruence: each step takes a nonzero diagonal
    pivot and replaces the remaining block by its Schur complement.  When
    every remaining diagonal entry is zero but some ``a[i][j]`` is not, the
    basis vector ``e_i`` is replaced by ``e_i + e_j``, giving the pivot
    ``2 a[i][j]``.
    """
    a = as_matrix(m)
    if not is_symmetric(a):
        raise ValueError("signature of a non-symmetric matrix")
    n = len(a)
    pos = neg = 0
    active = list(range(n))
    while active:
        k = next((i for i in active if a[i][i] != 0), None)
        if k is None:
            pair = next(
                ((i, j) for i in active for j in active if i < j and a[i][j] != 0), None
            )
            if pair is None:
                break
            i, j = pair
            for c in active:
                a[i][c] += a[j][c]
            for r in active:
                a[r][i] += a[r][j]
            k = i
        d = a[k][k]
        if d > 0:
            pos += 1
        else:
            neg += 1
        active.remove(k)
        col = [a[i][k] for i in active]
        for x, i in zip(col, active):
            if x == 0:
                continue
            f = x / d
            for j in active:
                a[i][j] -= f * a[k][j]
    return pos, neg, n - pos - neg
