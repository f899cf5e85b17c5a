"""Exterior forms on g* and the Chevalley-Eilenberg differential.

A :class:`KForm` maps strictly increasing 0-based index tuples to
coefficients, so ``KForm(2, {(0, 1): 1})`` is ``alpha_12``.  Evaluation
uses the determinant convention ``(a ^ b)(x, y) = a(x) b(y) - a(y) b(x)``,
which makes ``alpha_12(e_1, e_2) = 1``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Mapping, Sequence

from . import linalg
from .lie import LieAlgebra
from .notation import parse_form_token, split_tuple, NotationError, format_form_token


def _sort_sign(idx: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Sign of the permutation sorting ``idx``, or 0 on a repeated index."""
    if len(set(idx)) != len(idx):
        return 0, ()
    lst = list(idx)
    sign = 1
    for i in range(len(lst)):
        for j in range(len(lst) - 1 - i):
            if lst[j] > lst[j + 1]:
                lst[j], lst[j + 1] = lst[j + 1], lst[j]
                sign = -sign
    return sign, tuple(lst)


class KForm:
    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs: Mapping[tuple[int, ...], object] = ()):
        self.degree = degree
        clean: dict[tuple[int, ...], Fraction] = {}
        for idx, x in dict(coeffs).items():
            if len(idx) != degree:
                raise ValueError(f"index {idx} has wrong length for a {degree}-form")
            sign, key = _sort_sign(idx)
            if sign == 0:
                continue
            clean[key] = clean.get(key, Fraction(0)) + sign * Fraction(x)
        self.coeffs = {k: v for k, v in sorted(clean.items()) if v}

    @classmethod
    def basis(cls, *indices: int) -> "KForm":
        """``KForm.basis(1, 2)`` is ``alpha_12`` (1-based indices)."""
        return cls(len(indices), {tuple(i - 1 for i in indices): 1})

    def __add__(self, other: "KForm") -> "KForm":
        if self.degree != other.degree:
            raise ValueError("adding forms of different degree")
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) + v
        return KForm(self.degree, out)

    def __neg__(self) -> "KForm":
        return KForm(self.degree, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other: "KForm") -> "KForm":
        return self + (-other)

    def __rmul__(self, c) -> "KForm":
        c = Fraction(c)
        return KForm(self.degree, {k: c * v for k, v in self.coeffs.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, KForm) and self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.degree, tuple(self.coeffs.items())))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return f"KForm({self.degree}, 0)"
        terms = " + ".join(
            f"{v}*a{''.join(str(i + 1) for i in k)}" for k, v in self.coeffs.items()
        )
        return f"KForm({terms})"

    def __call__(self, *vectors: Sequence[Fraction]) -> Fraction:
        """Evaluate on ``degree`` vectors (alternating multilinear)."""
        if len(vectors) != self.degree:
            raise ValueError("wrong number of arguments")
        total = Fraction(0)
        for idx, c in self.coeffs.items():
            m = [[v[i] for i in idx] for v in vectors]
            total += c * linalg.determinant(m)
        return total

    def to_vector(self, n: int) -> list[Fraction]:
        """Coefficients on the lexicographic basis of Lambda^k, length C(n, k)."""
        return [self.coeffs.get(idx, Fraction(0)) for idx in combinations(range(n), self.degree)]

    @classmethod
    def from_vector(cls, degree: int, n: int, coords: Sequence) -> "KForm":
        return cls(degree, dict(zip(combinations(range(n), degree), coords)))


def one_form(i: int) -> KForm:
    """``alpha_{i+1}`` (0-based index)."""
    return KForm(1, {(i,): 1})


def wedge(a: KForm, b: KForm, n: int | None = None) -> KForm:
    if n is not None and a.degree + b.degree > n:
        raise ValueError(f"degree {a.degree + b.degree} exceeds dimension {n}")
    out: dict[tuple[int, ...], Fraction] = {}
    for ia, ca in a.coeffs.items():
        for ib, cb in b.coeffs.items():
            sign, key = _sort_sign(ia + ib)
            if sign:
                out[key] = out.get(key, Fraction(0)) + sign * ca * cb
    return KForm(a.degree + b.degree, out)


def ce_differential(g: LieAlgebra, f: KForm) -> KForm:
    """``d`` on 1- and 2-forms, with ``d alpha(x, y) = -alpha([x, y])``.

    On 2-forms ``d`` acts as a derivation:
    ``d(alpha_i ^ alpha_j) = d alpha_i ^ alpha_j - alpha_i ^ d alpha_j``.
    """
    if f.degree == 1:
        d1 = g.differentials()
        out = KForm(2)
        for (i,), c in f.coeffs.items():
            out = out + c * KForm(2, d1[i])
        return out
    if f.degree == 2:
        d1 = [KForm(2, d) for d in g.differentials()]
        out = KForm(3)
        for (i, j), c in f.coeffs.items():
            term = wedge(d1[i], one_form(j)) - wedge(one_form(i), d1[j])
            out = out + c * term
        return out
    raise ValueError(f"differential of a {f.degree}-form is not supported")


def d_matrix(g: LieAlgebra, degree: int) -> list[list[Fraction]]:
    """Matrix of ``d: Lambda^degree -> Lambda^(degree+1)`` on lexicographic bases (columns = inputs)."""
    n = g.dim
    cols = [
        ce_differential(g, KForm(degree, {idx: 1})).to_vector(n)
        for idx in combinations(range(n), degree)
    ]
    return linalg.transpose(cols) if cols and cols[0] else []


def closed_two_forms_basis(g: LieAlgebra) -> list[KForm]:
    """Echelonized basis of ker(d) on 2-forms, ordered alpha_12 < alpha_13 < ..."""
    n = g.dim
    m = d_matrix(g, 2)
    npairs = comb(n, 2)
    if not m or not any(any(row) for row in m):
        kernel = linalg.identity(npairs)
    else:
        kernel = linalg.nullspace(m)
    return [KForm.from_vector(2, n, v) for v in kernel]


def betti_numbers(g: LieAlgebra) -> tuple[int, int]:
    n = g.dim
    d1 = d_matrix(g, 1)
    rank1 = linalg.rank(d1) if d1 and d1[0] else 0
    b1 = n - rank1
    d2 = d_matrix(g, 2)
    rank2 = linalg.rank(d2) if d2 and d2[0] else 0
    ker2 = comb(n, 2) - rank2
    return b1, ker2 - rank1


def gram_matrix(w: KForm, n: int) -> list[list[Fraction]]:
    """``G[i][j] = w(e_i, e_j)`` for a 2-form."""
    if w.degree != 2:
        raise ValueError("gram matrix of a non-2-form")
    m = linalg.zeros(n, n)
    for (i, j), c in w.coeffs.items():
        m[i][j] += c
        m[j][i] -= c
    return m


def parse_salamon(tokens: Sequence[str] | str, dim: int | None = None) -> list[KForm]:
    """Parse ``(0,0,12,13+42)``-style tuples into 2-forms (one per alpha_i)."""
    if isinstance(tokens, str):
        tokens = split_tuple(tokens)
    n = dim if dim is not None else len(tokens)
    out = []
    for pos, tok in enumerate(tokens):
        try:
            out.append(KForm(2, parse_form_token(tok, n)))
        except NotationError as exc:
            raise NotationError(f"token {pos + 1}: {str(exc)}", tok, exc.position) from None
    return out


def format_salamon(forms: Sequence[KForm]) -> str:
    return "(" + ",".join(format_form_token(f.coeffs) for f in forms) + ")"


def parse_two_form(text: str, dim: int) -> KForm:
    return KForm(2, parse_form_token(text, dim))


def algebra_from_salamon(name: str, tokens: Sequence[str] | str) -> LieAlgebra:
    forms = parse_salamon(tokens)
    return LieAlgebra.from_differentials(name, len(forms), [f.coeffs for f in forms])


def top_power(w: KForm, n: int) -> Fraction:
    """Coefficient of ``alpha_{1..n}`` in ``w^(n/2)``; equals ``(n/2)! Pf(w)``."""
    if n % 2:
        raise ValueError("odd dimension")
    acc = KForm(0, {(): 1})
    for _ in range(n // 2):
        acc = wedge(acc, w, n)
    return acc.coeffs.get(tuple(range(n)), Fraction(0))
