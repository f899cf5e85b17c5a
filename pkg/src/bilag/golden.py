"""Reference connection and curvature components, checked against computation.

Listed components must match exactly.  Every component that is not listed
(and not implied by a listed one through the curvature symmetries) must
vanish; any that does not is flagged by name.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from itertools import product
from typing import Optional

from .catalog import Catalog, builtin
from .connection import CurvatureTensor, canonical_connection, curvature
from .lemmas import Evaluator, LemmaError
from .lie import Vector, vec
from .notation import format_vector
from .records import RecordError, iter_records


@dataclass
class GoldenEntry:
    name: str
    nabla: list[tuple[str, str, str]] = field(default_factory=list)
    curvature: list[tuple[str, str, str, str]] = field(default_factory=list)
    flat: Optional[bool] = None


@dataclass
class GoldenReport:
    name: str
    checked: int = 0
    mismatches: list[str] = field(default_factory=list)
    # unlisted components that turned out nonzero
    flagged: list[str] = field(default_factory=list)
    flat_ok: bool = True

    @property
    def passed(self) -> bool:
        return not self.mismatches and not self.flagged and self.flat_ok


def parse_golden(text: str) -> list[GoldenEntry]:
    out = []
    for lineno, rec in iter_records(text):
        entry: Optional[GoldenEntry] = None
        for ln, key, value in rec:
            if key == "name":
                if entry is not None:
                    raise RecordError(f"line {ln}: second name in one record")
                entry = GoldenEntry(value)
                continue
            if entry is None:
                raise RecordError(f"line {ln}: record must start with name")
            if key in ("nabla", "curvature"):
                lhs, arrow, rhs = value.partition("->")
                args = [a.strip() for a in lhs.split(",")]
                if not arrow or len(args) != (2 if key == "nabla" else 3):
                    raise RecordError(f"line {ln}: malformed {key} line")
                getattr(entry, key).append((*args, rhs.strip()))
            elif key == "flat":
                entry.flat = {"yes": True, "no": False}[value]
            else:
                raise RecordError(f"line {ln}: unknown field {key!r}")
        out.append(entry)
    return out


@lru_cache(maxsize=None)
def builtin_golden() -> tuple[GoldenEntry, ...]:
    text = resources.files("bilag").joinpath("data/golden.txt").read_text(encoding="utf-8")
    return tuple(parse_golden(text))


def _vector(ev: Evaluator, text: str) -> Vector:
    try:
        v = ev.eval(text)
    except LemmaError as exc:
        raise ValueError(f"{text!r}: {exc}") from None
    if not isinstance(v, tuple) or any(c.constant_value() is None for c in v):
        raise ValueError(f"{text!r} is not a constant vector")
    return vec(c.constant_value() for c in v)


def _implied(triples: dict[tuple[int, int, int], Vector], h: int) -> dict[tuple[int, int, int], Vector]:
    """Close listed curvature components under antisymmetry and the same-foliation symmetry."""
    out = dict(triples)
    todo = list(out)
    while todo:
        i, j, k = todo.pop()
        v = out[(i, j, k)]
        moves = [((j, i, k), tuple(-x for x in v))]
        if (j < h) == (k < h):
            moves.append(((i, k, j), v))
        for key, val in moves:
            if key not in out:
                out[key] = val
                todo.append(key)
    return out


def check_golden(entry: GoldenEntry, catalog: Optional[Catalog] = None) -> GoldenReport:
    cat_entry = (catalog or builtin()).entry(entry.name)
    b = cat_entry.structure()
    ct = canonical_connection(b)
    rt: CurvatureTensor = curvature(ct)
    g = b.algebra
    ev = Evaluator(g)
    basis = [tuple(x) for x in ct.basis]
    labels = list(cat_entry.f_text + cat_entry.g_text)
    n = len(basis)
    report = GoldenReport(entry.name)

    def index(text: str) -> int:
        v = _vector(ev, text)
        if v not in basis:
            raise ValueError(f"{entry.name}: {text} is not an adapted basis vector")
        return basis.index(v)

    listed_nabla: dict[tuple[int, int], Vector] = {}
    for x, y, rhs in entry.nabla:
        listed_nabla[(index(x), index(y))] = _vector(ev, rhs)
    for i, j in product(range(n), repeat=2):
        got = ct.apply(basis[i], basis[j])
        want = listed_nabla.get((i, j))
        label = f"nabla_{{{labels[i]}}} {labels[j]}"
        report.checked += 1
        if want is not None and got != want:
            report.mismatches.append(f"{label}: computed {format_vector(got)}, expected {format_vector(want)}")
        elif want is None and any(got):
            report.flagged.append(f"{label} = {format_vector(got)} is not listed")

    listed_r = {}
    for x, y, z, rhs in entry.curvature:
        listed_r[(index(x), index(y), index(z))] = _vector(ev, rhs)
    expected = _implied(listed_r, n // 2)
    for i, j, k in product(range(n), repeat=3):
        got = rt.component(i, j, k)
        want = expected.get((i, j, k))
        label = f"R({labels[i]},{labels[j]}){labels[k]}"
        report.checked += 1
        if want is not None and got != want:
            kind = "listed" if (i, j, k) in listed_r else "implied"
            report.mismatches.append(f"{label}: computed {format_vector(got)}, {kind} {format_vector(want)}")
        elif want is None and any(got):
            report.flagged.append(f"{label} = {format_vector(got)} is not listed")

    if entry.flat is not None:
        report.flat_ok = rt.is_flat() == entry.flat
        if not report.flat_ok:
            report.mismatches.append(f"flatness: computed {rt.is_flat()}, expected {entry.flat}")
    return report


def check_all(catalog: Optional[Catalog] = None) -> list[GoldenReport]:
    return [check_golden(e, catalog) for e in builtin_golden()]
