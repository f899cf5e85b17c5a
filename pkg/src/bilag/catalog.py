"""Builtin catalog of nilpotent Lie algebras, symplectic forms and witnesses.

Records live in a line-oriented ``key: value`` text file (see
``data/catalog.txt``), one blank-line separated block per algebra.
Canonical structure constants are the ``dalpha`` field; the ``salamon``
tuple is kept as an alias; where it differs from ``dalpha`` the record
carries ``salamonMap``, an explicit isomorphism between the two.
"""

from __future__ import annotations

import difflib
import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional

from . import lie, linalg
from .forms import KForm, format_salamon, parse_salamon, parse_two_form
from .lie import LieAlgebra, Subspace, Vector
from .records import RecordError, as_dict, iter_records
from .notation import NotationError, format_form_token, parse_vector, split_basis, split_tuple
from .symplectic import BiLagrangianStructure, Verdict, is_symplectic, verify_bilagrangian

log = logging.getLogger(__name__)

FORMAT_TAG = "bilag-catalog 1"
FIELDS = (
    "name", "aliases", "dim", "dalpha", "salamon", "salamonMap", "khakimdjanov", "omega",
    "source", "foliationF", "foliationG", "flat", "betti",
)


class CatalogError(ValueError):
    pass


@dataclass
class CatalogEntry:
    name: str
    dim: int
    dalpha_tokens: tuple[str, ...]
    algebra: LieAlgebra
    omega: Optional[KForm] = None
    source: Optional[str] = None
    f_text: tuple[str, ...] = ()
    g_text: tuple[str, ...] = ()
    expected_flat: Optional[bool] = None
    expected_betti: Optional[tuple[int, int]] = None
    aliases: tuple[str, ...] = ()
    salamon: Optional[str] = None
    khakimdjanov: Optional[str] = None
    salamon_map: tuple[str, ...] = ()
    problems: list[str] = field(default_factory=list)

    @property
    def has_witness(self) -> bool:
        return bool(self.f_text)

    @property
    def f_basis(self) -> list[Vector]:
        return [parse_vector(t, self.dim) for t in self.f_text]

    @property
    def g_basis(self) -> list[Vector]:
        return [parse_vector(t, self.dim) for t in self.g_text]

    @property
    def witness(self) -> Optional[tuple[Subspace, Subspace]]:
        if not self.has_witness:
            return None
        return Subspace(self.algebra, self.f_basis), Subspace(self.algebra, self.g_basis)

    def structure(self) -> BiLagrangianStructure:
        if not self.has_witness or self.omega is None:
            raise CatalogError(f"{self.name} has no bi-Lagrangian witness")
        return BiLagrangianStructure(self.algebra, self.omega, self.f_basis, self.g_basis)

    def salamon_algebra(self) -> Optional[LieAlgebra]:
        if not self.salamon:
            return None
        forms = parse_salamon(self.salamon, self.dim)
        return LieAlgebra.from_differentials(self.name + " (Salamon)", self.dim, [f.coeffs for f in forms])

    def salamon_matrix(self) -> list[list[Fraction]]:
        """Columns are the images of the Salamon basis in the ``dalpha`` basis."""
        if not self.salamon_map:
            return linalg.identity(self.dim)
        return linalg.transpose([list(parse_vector(t, self.dim)) for t in self.salamon_map])

    @property
    def ok(self) -> bool:
        return not self.problems


def normalize_name(name: str) -> str:
    s = name.strip().replace("⊕", "+").replace(" ", "")
    s = re.sub(r"[_{}\^$]", "", s)
    s = s.replace("\\oplus", "+")
    return s.lower()


def _split_records(text: str) -> Iterable[tuple[int, dict[str, str]]]:
    try:
        for lineno, rec in iter_records(text):
            yield lineno, as_dict(rec)
    except RecordError as exc:
        raise CatalogError(str(exc)) from None


def _build_entry(rec: dict[str, str]) -> CatalogEntry:
    unknown = set(rec) - set(FIELDS)
    if unknown:
        raise CatalogError(f"unknown fields {sorted(unknown)}")
    for req in ("name", "dim", "dalpha"):
        if req not in rec:
            raise CatalogError(f"missing field {req!r}")
    name = rec["name"]
    dim = int(rec["dim"])
    tokens = tuple(split_tuple(rec["dalpha"]))
    if len(tokens) != dim:
        raise CatalogError(f"{name}: {len(tokens)} dalpha tokens for dim {dim}")
    forms = parse_salamon(tokens, dim)
    algebra = LieAlgebra.from_differentials(name, dim, [f.coeffs for f in forms])
    entry = CatalogEntry(name=name, dim=dim, dalpha_tokens=tokens, algebra=algebra)
    if "omega" in rec:
        entry.omega = parse_two_form(rec["omega"], dim)
    entry.source = rec.get("source")
    if ("foliationF" in rec) != ("foliationG" in rec):
        raise CatalogError(f"{name}: foliationF and foliationG must be given together")
    if "foliationF" in rec:
        entry.f_text = tuple(split_basis(rec["foliationF"]))
        entry.g_text = tuple(split_basis(rec["foliationG"]))
        entry.f_basis, entry.g_basis  # parse eagerly for diagnostics
    if "flat" in rec:
        entry.expected_flat = {"yes": True, "no": False}[rec["flat"]]
    if "betti" in rec:
        b1, b2 = (int(x) for x in rec["betti"].split(","))
        entry.expected_betti = (b1, b2)
    entry.aliases = tuple(a.strip() for a in rec.get("aliases", "").split(";") if a.strip())
    entry.salamon = rec.get("salamon")
    entry.khakimdjanov = rec.get("khakimdjanov")
    entry.salamon_map = tuple(split_basis(rec.get("salamonMap", "")))
    return entry


def validate_entry(entry: CatalogEntry) -> list[str]:
    g = entry.algebra
    problems = []
    bad = lie.check_jacobi(g)
    if bad is not None:
        problems.append("Jacobi identity fails on (e%d,e%d,e%d)" % tuple(i + 1 for i in bad))
        return problems
    if not lie.is_nilpotent(g):
        problems.append("not nilpotent")
    if entry.omega is not None:
        verdict = is_symplectic(g, entry.omega)
        if verdict is not Verdict.YES:
            problems.append(f"omega is {verdict.value}")
    if entry.has_witness:
        if entry.omega is None:
            problems.append("witness without omega")
        else:
            f, g2 = entry.witness
            report = verify_bilagrangian(g, entry.omega, f, g2)
            if not report.passed:
                problems.append("witness fails: " + ", ".join(report.failures()))
    return problems


def parse_catalog(text: str, validate: bool = True) -> list[CatalogEntry]:
    """Parse catalog text; schema errors raise, validation failures are recorded per entry."""
    entries: list[CatalogEntry] = []
    seen: set[str] = set()
    records = list(_split_records(text))
    if records and set(records[0][1]) == {"format"}:
        if records[0][1]["format"] != FORMAT_TAG:
            raise CatalogError(f"unsupported catalog format {records[0][1]['format']!r}")
        records = records[1:]
    for lineno, rec in records:
        try:
            entry = _build_entry(rec)
        except (CatalogError, NotationError, ValueError, KeyError) as exc:
            raise CatalogError(f"record at line {lineno}: {exc}") from None
        key = normalize_name(entry.name)
        if key in seen:
            raise CatalogError(f"record at line {lineno}: duplicate name {entry.name!r}")
        seen.add(key)
        if validate:
            entry.problems = validate_entry(entry)
            for p in entry.problems:
                log.warning("%s: %s", entry.name, p)
        entries.append(entry)
    return entries


def serialize_entry(entry: CatalogEntry) -> str:
    lines = [f"name: {entry.name}"]
    if entry.aliases:
        lines.append("aliases: " + "; ".join(entry.aliases))
    lines.append(f"dim: {entry.dim}")
    lines.append("dalpha: " + format_salamon(parse_salamon(entry.dalpha_tokens, entry.dim))[1:-1])
    if entry.salamon:
        lines.append(f"salamon: {entry.salamon}")
    if entry.salamon_map:
        lines.append("salamonMap: " + "; ".join(entry.salamon_map))
    if entry.khakimdjanov:
        lines.append(f"khakimdjanov: {entry.khakimdjanov}")
    if entry.omega is not None:
        lines.append("omega: " + format_form_token(entry.omega.coeffs))
    if entry.source:
        lines.append(f"source: {entry.source}")
    if entry.has_witness:
        lines.append("foliationF: " + "; ".join(entry.f_text))
        lines.append("foliationG: " + "; ".join(entry.g_text))
    if entry.expected_flat is not None:
        lines.append("flat: " + ("yes" if entry.expected_flat else "no"))
    if entry.expected_betti is not None:
        lines.append("betti: %d,%d" % entry.expected_betti)
    return "\n".join(lines) + "\n"


def serialize_catalog(entries: Iterable[CatalogEntry]) -> str:
    return f"format: {FORMAT_TAG}\n\n" + "\n".join(serialize_entry(e) for e in entries)


class Catalog:
    def __init__(self, entries: list[CatalogEntry]):
        self.entries = entries
        self._index: dict[str, CatalogEntry] = {}
        for e in entries:
            keys = [e.name, *e.aliases]
            if e.khakimdjanov:
                keys.append(e.khakimdjanov)
            if e.salamon:
                keys.append(e.salamon)
                keys.append(e.salamon.strip("()"))
            for k in keys:
                self._index.setdefault(normalize_name(k), e)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def entry(self, name: str) -> CatalogEntry:
        key = normalize_name(name)
        if key in self._index:
            return self._index[key]
        names = [e.name for e in self.entries]
        close = difflib.get_close_matches(name, names, n=1)
        hint = f"; did you mean {close[0]!r}?" if close else ""
        raise KeyError(f"unknown algebra {name!r}{hint}")

    def by_dim(self, dim: int) -> list[CatalogEntry]:
        return [e for e in self.entries if e.dim == dim]

    def witnesses(self) -> list[CatalogEntry]:
        return [e for e in self.entries if e.has_witness]


@lru_cache(maxsize=None)
def _builtin_text() -> str:
    return resources.files("bilag").joinpath("data/catalog.txt").read_text(encoding="utf-8")


def load_catalog(source: str | Path | None = None, validate: bool = True) -> Catalog:
    """``None`` loads the builtin catalog; otherwise a path to a catalog file."""
    text = _builtin_text() if source is None or source == "builtin" else Path(source).read_text(encoding="utf-8")
    return Catalog(parse_catalog(text, validate=validate))


@lru_cache(maxsize=None)
def builtin() -> Catalog:
    return load_catalog(None)


def entry(name: str) -> CatalogEntry:
    return builtin().entry(name)
