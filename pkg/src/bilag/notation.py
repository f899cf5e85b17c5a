"""Text syntax for rationals, vectors and 2-forms.

* rationals: ``3``, ``-7/2``
* vectors: ``e1``, ``e2-2*e1``, ``-3*e5+e6``, ``1/2*e3``
* form tokens (Salamon style): ``0``, ``12``, ``13+42``, ``14-25``, and with
  coefficients ``-15+6*26+7*34``.  The digit pair ``jk`` means
  ``alpha_j ^ alpha_k``, so ``42`` is ``-alpha_24``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence


class NotationError(ValueError):
    """Malformed token; ``position`` is the 0-based character offset."""

    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position


def format_rational(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise NotationError(f"bad rational {text!r}", text, 0) from exc


_TERM = re.compile(r"\s*([+-]?)\s*(?:(\d+(?:/\d+)?)\s*\*\s*)?(e(\d+)|\d+)\s*")


def _terms(text: str):
    pos = 0
    s = text.strip()
    if not s:
        raise NotationError("empty expression", text, 0)
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise NotationError("unexpected character", text, pos)
        if not first and not m.group(1):
            raise NotationError("missing '+' or '-'", text, pos)
        sign = -1 if m.group(1) == "-" else 1
        coeff = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        yield m.start(3), sign * coeff, m.group(3)
        pos = m.end()
        first = False


def parse_vector(text: str, dim: int) -> tuple[Fraction, ...]:
    out = [Fraction(0)] * dim
    for pos, coeff, atom in _terms(text):
        if not atom.startswith("e"):
            raise NotationError("expected a basis vector e<i>", text, pos)
        i = int(atom[1:])
        if not 1 <= i <= dim:
            raise NotationError(f"index {i} out of range 1..{dim}", text, pos)
        out[i - 1] += coeff
    return tuple(out)


def format_vector(v: Sequence) -> str:
    parts = []
    for i, x in enumerate(v):
        x = Fraction(x)
        if not x:
            continue
        mag = "" if abs(x) == 1 else format_rational(abs(x)) + "*"
        parts.append(("-" if x < 0 else "+") + mag + f"e{i + 1}")
    if not parts:
        return "0"
    s = "".join(parts)
    return s[1:] if s.startswith("+") else s


def parse_form_token(text: str, dim: int) -> dict[tuple[int, int], Fraction]:
    """One token of a Salamon tuple, normalized to ``{(j, k): coeff}`` with ``j < k`` (0-based)."""
    if text.strip() == "0":
        return {}
    out: dict[tuple[int, int], Fraction] = {}
    for pos, coeff, atom in _terms(text):
        if atom.startswith("e") or len(atom) != 2:
            raise NotationError("expected a two-digit index pair", text, pos)
        j, k = int(atom[0]), int(atom[1])
        if j == k:
            raise NotationError(f"repeated index {j}", text, pos)
        if not (1 <= j <= dim and 1 <= k <= dim):
            raise NotationError(f"index out of range 1..{dim}", text, pos)
        if j > k:
            j, k, coeff = k, j, -coeff
        key = (j - 1, k - 1)
        out[key] = out.get(key, Fraction(0)) + coeff
    return {key: c for key, c in out.items() if c}


def format_form_token(coeffs: dict[tuple[int, int], Fraction]) -> str:
    """Inverse of :func:`parse_form_token` on normalized input (lexicographic pairs)."""
    parts = []
    for (j, k) in sorted(coeffs):
        x = Fraction(coeffs[(j, k)])
        if not x:
            continue
        mag = "" if abs(x) == 1 else format_rational(abs(x)) + "*"
        parts.append(("-" if x < 0 else "+") + mag + f"{j + 1}{k + 1}")
    if not parts:
        return "0"
    s = "".join(parts)
    return s[1:] if s.startswith("+") else s


def split_tuple(text: str) -> list[str]:
    """``"(0,0,12,13+42)"`` -> ``["0", "0", "12", "13+42"]``."""
    s = text.strip()
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    return [t.strip() for t in s.split(",")]


def split_basis(text: str) -> list[str]:
    """Basis lists are separated by ``;`` (or ``,`` when unambiguous) and may carry braces."""
    s = text.strip().strip("{}")
    sep = ";" if ";" in s else ","
    return [t.strip() for t in s.split(sep) if t.strip()]
