"""Sparse multivariate polynomials over Q in named parameters.

Parameters are identifiers such as ``a2``, ``b5``, ``x3``, ``w16``.  A
monomial is a sorted tuple of ``(name, exponent)`` pairs; a polynomial is a
mapping monomial -> nonzero :class:`~fractions.Fraction`.  Instances are
immutable and compare structurally.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Optional, Sequence, Union

from .lie import LieAlgebra

Monomial = tuple[tuple[str, int], ...]
Scalar = Union[int, Fraction]

_NAME = re.compile(r"([A-Za-z_]+)(\d*)(.*)")


def var_key(name: str):
    m = _NAME.fullmatch(name)
    if not m:
        return (name, -1, "")
    return (m.group(1), int(m.group(2)) if m.group(2) else -1, m.group(3))


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items(), key=lambda t: var_key(t[0])))


class ParamPoly:
    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        clean = {}
        for m, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[m] = c
        self.terms: dict[Monomial, Fraction] = dict(sorted(clean.items(), key=lambda t: _order(t[0])))
        self._hash = None

    @classmethod
    def const(cls, c: Scalar) -> "ParamPoly":
        return cls({(): c})

    @classmethod
    def var(cls, name: str) -> "ParamPoly":
        return cls({((name, 1),): 1})

    @staticmethod
    def lift(x) -> "ParamPoly":
        return x if isinstance(x, ParamPoly) else ParamPoly.const(x)

    def __add__(self, other) -> "ParamPoly":
        other = ParamPoly.lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return ParamPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "ParamPoly":
        return ParamPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "ParamPoly":
        return self + (-ParamPoly.lift(other))

    def __rsub__(self, other) -> "ParamPoly":
        return ParamPoly.lift(other) - self

    def __mul__(self, other) -> "ParamPoly":
        if not isinstance(other, ParamPoly):
            c = Fraction(other)
            return ParamPoly({m: c * v for m, v in self.terms.items()})
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return ParamPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> "ParamPoly":
        if isinstance(other, ParamPoly):
            c = other.constant_value()
            if c is None:
                raise TypeError("division by a non-constant polynomial")
            other = c
        return self * (1 / Fraction(other))

    def __pow__(self, k: int) -> "ParamPoly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("non-negative integer exponents only")
        out = ParamPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, ParamPoly):
            try:
                other = ParamPoly.const(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self.terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def constant_value(self) -> Optional[Fraction]:
        if not self.terms:
            return Fraction(0)
        if set(self.terms) == {()}:
            return self.terms[()]
        return None

    def variables(self) -> set[str]:
        return {v for m in self.terms for v, _ in m}

    def degree(self) -> int:
        return max((sum(e for _, e in m) for m in self.terms), default=0)

    def subs(self, values: Mapping[str, object]) -> "ParamPoly":
        """Substitute numbers or polynomials for variables."""
        vals = {k: ParamPoly.lift(v) for k, v in values.items()}
        out = ParamPoly()
        for m, c in self.terms.items():
            term = ParamPoly.const(c)
            rest = []
            for v, e in m:
                if v in vals:
                    term = term * vals[v] ** e
                else:
                    rest.append((v, e))
            out = out + term * ParamPoly({tuple(rest): 1})
        return out

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.terms.items():
            body = "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)
            mag = abs(c)
            if body:
                coef = "" if mag == 1 else f"{_fmt(mag)}*"
                s = coef + body
            else:
                s = _fmt(mag)
            parts.append(("- " if c < 0 else "+ ") + s)
        out = " ".join(parts)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]

    def __repr__(self) -> str:
        return f"ParamPoly({self})"


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _order(m: Monomial):
    # graded order: total degree, then variable names
    return (sum(e for _, e in m), [(var_key(v), e) for v, e in m])


def variables(*names: str) -> list[ParamPoly]:
    return [ParamPoly.var(n) for n in names]


def proportionality(p: ParamPoly, q: ParamPoly) -> Optional[Fraction]:
    """The scalar ``c`` with ``p == c * q``, or ``None`` if there is none."""
    if q.is_zero():
        return Fraction(1) if p.is_zero() else None
    if set(p.terms) != set(q.terms):
        return None
    m0 = next(iter(q.terms))
    c = p.terms[m0] / q.terms[m0]
    return c if p == q * c else None


# -- vectors with polynomial coefficients -----------------------------------

ParamVector = tuple[ParamPoly, ...]


def pvec(coords: Iterable) -> ParamVector:
    return tuple(ParamPoly.lift(c) for c in coords)


def pzero(n: int) -> ParamVector:
    return tuple(ParamPoly() for _ in range(n))


def padd(u: ParamVector, v: ParamVector) -> ParamVector:
    return tuple(a + b for a, b in zip(u, v))


def psub(u: ParamVector, v: ParamVector) -> ParamVector:
    return tuple(a - b for a, b in zip(u, v))


def pscale(c, u: ParamVector) -> ParamVector:
    return tuple(ParamPoly.lift(c) * a for a in u)


def parametric_bracket(g: LieAlgebra, u: Sequence, v: Sequence) -> ParamVector:
    if len(u) != g.dim or len(v) != g.dim:
        raise ValueError("dimension mismatch")
    u, v = pvec(u), pvec(v)
    out = [ParamPoly() for _ in range(g.dim)]
    for i, j, k, c in g._terms:
        w = u[i] * v[j] - u[j] * v[i]
        if w:
            out[k] = out[k] + w * c
    return tuple(out)


# -- antisymmetric polynomial matrices ---------------------------------------

PMatrix = list[list[ParamPoly]]


def form_matrix(coeffs: Mapping[tuple[int, int], object], n: int) -> PMatrix:
    """Gram matrix of a 2-form ``{(i, j): coeff}`` (0-based, ``i < j``)."""
    m = [[ParamPoly() for _ in range(n)] for _ in range(n)]
    for (i, j), c in coeffs.items():
        c = ParamPoly.lift(c)
        m[i][j] = m[i][j] + c
        m[j][i] = m[j][i] - c
    return m


def perfect_matchings(idx: tuple[int, ...]):
    """All perfect matchings of ``idx`` with the sign of the matching permutation."""
    if not idx:
        yield 1, ()
        return
    first = idx[0]
    for pos in range(1, len(idx)):
        rest = idx[1:pos] + idx[pos + 1:]
        sign = 1 if pos % 2 else -1
        for s, m in perfect_matchings(rest):
            yield sign * s, ((first, idx[pos]),) + m


def pfaffian(m: Sequence[Sequence]) -> ParamPoly:
    """Pfaffian by summing over perfect matchings (15 terms when ``n = 6``)."""
    n = len(m)
    if n % 2:
        raise ValueError("Pfaffian of an odd-dimensional matrix")
    total = ParamPoly()
    for sign, matching in perfect_matchings(tuple(range(n))):
        term = ParamPoly.const(sign)
        for i, j in matching:
            term = term * ParamPoly.lift(m[i][j])
            if term.is_zero():
                break
        total = total + term
    return total


def determinant(m: Sequence[Sequence]) -> ParamPoly:
    """Laplace expansion along rows, memoized on the remaining column set."""
    n = len(m)
    mm = [[ParamPoly.lift(x) for x in row] for row in m]

    @lru_cache(maxsize=None)
    def det(row: int, cols: tuple[int, ...]) -> ParamPoly:
        if row == n:
            return ParamPoly.const(1)
        total = ParamPoly()
        for pos, c in enumerate(cols):
            x = mm[row][c]
            if x.is_zero():
                continue
            sub = det(row + 1, cols[:pos] + cols[pos + 1:])
            term = x * sub
            total = total + (term if pos % 2 == 0 else -term)
        return total

    return det(0, tuple(range(n)))


def parametric_pfaffian(g: LieAlgebra, family: Mapping[tuple[int, int], object]) -> ParamPoly:
    """Pfaffian of the Gram matrix of a symbolic 2-form family on ``g``."""
    if g.dim % 2:
        raise ValueError("odd dimension")
    if g.dim > 6:
        raise ValueError("families of dimension at most 6")
    return pfaffian(form_matrix(family, g.dim))


def general_closed_family(g: LieAlgebra, prefix: str = "w") -> dict[tuple[int, int], ParamPoly]:
    """Generic closed 2-form: one parameter per echelon pivot ``alpha_ij``, named ``w<ij>``."""
    from .forms import closed_two_forms_basis

    fam: dict[tuple[int, int], ParamPoly] = {}
    for f in closed_two_forms_basis(g):
        (pi, pj) = next(iter(f.coeffs))
        p = ParamPoly.var(f"{prefix}{pi + 1}{pj + 1}")
        for key, c in f.coeffs.items():
            fam[key] = fam.get(key, ParamPoly()) + p * c
    return {k: v for k, v in fam.items() if v}
