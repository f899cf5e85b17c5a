"""Command-line interface: ``bilag <command> [options]``.

Every command builds a :class:`~bilag.report.Report` and renders it in the
requested format.  The exit status is 0 exactly when every verification the
command performed passed; usage and parse errors exit with status 2.
"""

from __future__ import annotations

import argparse
import sys
from itertools import combinations, product
from typing import Optional, Sequence

from .catalog import Catalog, CatalogEntry, CatalogError, load_catalog
from .connection import (
    canonical_connection,
    curvature,
    curvature_identities,
    is_zero_tensor,
    levi_civita,
    nabla_omega,
    preserves,
    ricci,
    torsion,
)
from .forms import betti_numbers, format_salamon, parse_two_form
from .golden import check_all
from .lemmas import LemmaReport, builtin_lemmas, verify_lemma
from .lie import Subspace, bracket
from .notation import NotationError, format_vector, parse_vector, split_basis
from .records import RecordError
from .report import FORMATS, Report, render
from .search import STRATEGIES, SearchConfig, search_bilagrangian
from .symplectic import BiLagrangianStructure, Verdict, is_symplectic, para_kaehler, verify_bilagrangian


class UsageError(Exception):
    pass


def _entry(cat: Catalog, name: str) -> CatalogEntry:
    try:
        return cat.entry(name)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None


def _omega(entry: CatalogEntry, text: Optional[str]):
    if text is not None:
        return parse_two_form(text, entry.dim)
    if entry.omega is None:
        raise UsageError(f"{entry.name} has no symplectic form in the catalog; pass --omega")
    return entry.omega


def _labels(entry: CatalogEntry) -> list[str]:
    return list(entry.f_text + entry.g_text)


# ----------------------------------------------------------------- commands

def cmd_list(cat: Catalog, args) -> Report:
    rep = Report()
    s = rep.section("catalog", ["name", "dim", "dalpha", "b1", "b2", "omega", "witness", "flat"])
    for e in cat:
        b1, b2 = betti_numbers(e.algebra)
        flat = None if e.expected_flat is None else ("R = 0" if e.expected_flat else "R != 0")
        s.add(e.name, e.dim, "(" + ",".join(e.dalpha_tokens) + ")", b1, b2, _form_text(e.omega), e.has_witness, flat)
    return rep


def _form_text(w) -> str:
    if w is None:
        return ""
    return format_salamon([w]).strip("()")


def cmd_show(cat: Catalog, args) -> Report:
    e = _entry(cat, args.name)
    rep = Report()
    s = rep.section(e.name, ["field", "value"])
    s.add("dim", e.dim)
    s.add("dalpha", "(" + ",".join(e.dalpha_tokens) + ")")
    for label, value in (("aliases", "; ".join(e.aliases)), ("salamon", e.salamon), ("khakimdjanov", e.khakimdjanov)):
        if value:
            s.add(label, value)
    basis = e.algebra.basis()
    brackets = [
        f"[e{i + 1},e{j + 1}] = {format_vector(v)}"
        for i, j in combinations(range(e.dim), 2)
        if any(v := bracket(e.algebra, basis[i], basis[j]))
    ]
    s.add("brackets", "; ".join(brackets) or "abelian")
    b1, b2 = betti_numbers(e.algebra)
    s.add("betti", f"{b1},{b2}")
    if e.omega is not None:
        s.add("omega", _form_text(e.omega))
        s.add("symplectic", is_symplectic(e.algebra, e.omega) is Verdict.YES)
    if e.has_witness:
        s.add("F", "; ".join(e.f_text))
        s.add("G", "; ".join(e.g_text))
        rep_w = verify_bilagrangian(e.algebra, e.omega, *e.witness)
        s.add("bi-Lagrangian", rep_w.passed)
        s.verdict = rep_w.passed
    return rep


def cmd_betti(cat: Catalog, args) -> Report:
    if args.all == bool(args.name):
        raise UsageError("betti needs either a name or --all")
    entries = cat.by_dim(6) if args.all else [_entry(cat, args.name)]
    rep = Report()
    s = rep.section("betti numbers", ["name", "b1", "b2", "expected", "match"])
    ok = True
    for e in entries:
        b = betti_numbers(e.algebra)
        exp = e.expected_betti
        match = exp is None or tuple(exp) == b
        ok &= match
        s.add(e.name, b[0], b[1], "" if exp is None else f"{exp[0]},{exp[1]}", match)
    s.verdict = ok
    return rep


def cmd_check(cat: Catalog, args) -> Report:
    e = _entry(cat, args.name)
    w = _omega(e, args.omega)
    rep = Report()
    verdict = is_symplectic(e.algebra, w)
    s = rep.section(f"{e.name}: symplectic form", ["omega", "verdict"], verdict=verdict is Verdict.YES)
    s.add(_form_text(w), verdict.value)
    f_text = split_basis(args.f) if args.f else list(e.f_text)
    g_text = split_basis(args.g) if args.g else list(e.g_text)
    if not f_text and not g_text:
        return rep
    if not f_text or not g_text:
        raise UsageError("both foliations are needed; pass --f and --g")
    f = Subspace(e.algebra, [parse_vector(t, e.dim) for t in f_text])
    g = Subspace(e.algebra, [parse_vector(t, e.dim) for t in g_text])
    result = verify_bilagrangian(e.algebra, w, f, g)
    t = rep.section(f"{e.name}: bi-Lagrangian", ["condition", "holds"], verdict=result.passed)
    t.add("F", "; ".join(f_text))
    t.add("G", "; ".join(g_text))
    for k, v in vars(result).items():
        t.add(k.replace("_", " "), v)
    return rep


def _axioms(b: BiLagrangianStructure):
    ct = canonical_connection(b)
    pk = para_kaehler(b)
    n = b.dim
    sig = pk.signature()
    checks = [
        ("torsion free", is_zero_tensor(torsion(ct))),
        ("omega parallel", is_zero_tensor(nabla_omega(ct, b.omega))),
        ("preserves F and G", preserves(ct, b)),
        ("equals Levi-Civita of g", levi_civita(b.algebra, pk.metric) == ct),
        (f"signature ({n // 2},{n // 2})", sig == (n // 2, n // 2, 0)),
    ]
    return ct, checks


def _structure(e: CatalogEntry) -> BiLagrangianStructure:
    if not e.has_witness:
        raise UsageError(f"{e.name} has no bi-Lagrangian witness in the catalog")
    return e.structure()


def cmd_connection(cat: Catalog, args) -> Report:
    e = _entry(cat, args.name)
    b = _structure(e)
    ct, checks = _axioms(b)
    labels = _labels(e)
    rep = Report()
    s = rep.section(f"{e.name}: canonical connection", ["X", "Y", "nabla_X Y"])
    for i, j in product(range(b.dim), repeat=2):
        v = ct.apply(ct.basis[i], ct.basis[j])
        if any(v):
            s.add(labels[i], labels[j], format_vector(v))
    a = rep.section(f"{e.name}: axioms", ["property", "holds"], verdict=all(ok for _, ok in checks))
    for label, ok in checks:
        a.add(label, ok)
    return rep


def cmd_curvature(cat: Catalog, args) -> Report:
    e = _entry(cat, args.name)
    b = _structure(e)
    ct = canonical_connection(b)
    rt = curvature(ct)
    labels = _labels(e)
    n = b.dim
    rep = Report()
    s = rep.section(f"{e.name}: curvature", ["X", "Y", "Z", "R(X,Y)Z"])
    for i, j, k, _ in rt.nonzero():
        s.add(labels[i], labels[j], labels[k], format_vector(rt.component(i, j, k)))
    ric = ricci(rt)
    r = rep.section(f"{e.name}: Ricci", ["", *labels], verdict=is_zero_tensor(ric))
    for i in range(n):
        r.add(labels[i], *ric[i])
    ids = curvature_identities(ct, rt, b)
    flat = rt.is_flat()
    checks = [
        ("Bianchi", ids.bianchi),
        ("leafwise flat", ids.leafwise_flat),
        ("same-foliation symmetry", ids.foliation_symmetry),
    ]
    if e.expected_flat is not None:
        checks.append((f"flat = {'yes' if e.expected_flat else 'no'}", flat == e.expected_flat))
    t = rep.section(f"{e.name}: identities", ["property", "holds"], verdict=all(ok for _, ok in checks))
    for label, ok in checks:
        t.add(label, ok)
    return rep


def _lemma_section(rep: Report, reports: Sequence[LemmaReport]):
    s = rep.section("lemma identities", ["id", "algebra", "check", "holds", "detail"])
    for lr in reports:
        for c in lr.results:
            s.add(lr.lemma_id, lr.algebra, c.text, c.passed, c.detail)
    s.verdict = all(lr.passed for lr in reports)
    return s


def cmd_lemmas(cat: Catalog, args) -> Report:
    lemmas = builtin_lemmas()
    if args.id:
        if args.id not in lemmas:
            raise UsageError(f"unknown lemma id {args.id!r}; known: {', '.join(lemmas)}")
        chosen = [lemmas[args.id]]
    else:
        chosen = list(lemmas.values())
    rep = Report()
    _lemma_section(rep, [verify_lemma(l, cat) for l in chosen])
    return rep


def cmd_search(cat: Catalog, args) -> Report:
    e = _entry(cat, args.name)
    w = _omega(e, args.omega)
    if is_symplectic(e.algebra, w) is not Verdict.YES:
        raise UsageError(f"{_form_text(w)} is not symplectic on {e.name}")
    try:
        cfg = SearchConfig(seed=args.seed, budget=args.budget, coefficient_height=args.height, strategy=args.strategy)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out = search_bilagrangian(e.algebra, w, cfg)
    rep = Report()
    s = rep.section(f"{e.name}: search", ["field", "value"], verdict=out.found is not None)
    s.add("omega", _form_text(w))
    s.add("strategy", cfg.strategy)
    s.add("height", cfg.coefficient_height)
    s.add("budget", cfg.budget)
    s.add("seed", cfg.seed)
    s.add("outcome", out.summary)
    s.add("candidates tried", out.candidates_tried)
    for k, v in out.filter_stats.items():
        s.add(f"rejected: {k}", v)
    if out.found is not None:
        s.add("F", "; ".join(format_vector(v) for v in out.found.f_basis))
        s.add("G", "; ".join(format_vector(v) for v in out.found.g_basis))
    return rep


def verify_tables(cat: Catalog) -> Report:
    rep = Report()
    witnesses = cat.witnesses()

    w = rep.section("witnesses", ["name", "dim", "omega", "F", "G", "verified"])
    structures = {}
    for e in witnesses:
        result = verify_bilagrangian(e.algebra, e.omega, *e.witness)
        w.add(e.name, e.dim, _form_text(e.omega), "; ".join(e.f_text), "; ".join(e.g_text), result.passed)
        if result.passed:
            structures[e.name] = e.structure()
    w.verdict = len(structures) == len(witnesses)

    dim6 = cat.by_dim(6)
    bt = rep.section("betti numbers", ["name", "b1", "b2", "match"])
    betti_ok = 0
    for e in dim6:
        b = betti_numbers(e.algebra)
        ok = e.expected_betti is not None and tuple(e.expected_betti) == b
        betti_ok += ok
        bt.add(e.name, b[0], b[1], ok)
    bt.verdict = betti_ok == len(dim6)

    cv = rep.section("curvature", ["name", "dim", "curvature", "expected", "ricci", "axioms", "identities"])
    counts = {"flat6": 0, "nonflat6": 0, "flat4": 0, "flat2": 0}
    ricci6 = ricci_ok = axioms_ok = ids_ok = flat_ok = 0
    for e in witnesses:
        b = structures.get(e.name)
        if b is None:
            cv.add(e.name, e.dim, "", "", False, False, False)
            continue
        ct, checks = _axioms(b)
        rt = curvature(ct)
        flat = rt.is_flat()
        ric = is_zero_tensor(ricci(rt))
        ax = all(ok for _, ok in checks)
        ids = curvature_identities(ct, rt, b).passed
        match = e.expected_flat is None or flat == e.expected_flat
        ricci_ok += ric
        ricci6 += ric and e.dim == 6
        axioms_ok += ax
        ids_ok += ids
        flat_ok += match
        if e.dim == 6:
            counts["flat6" if flat else "nonflat6"] += 1
        elif flat:
            counts[f"flat{e.dim}"] += 1
        cv.add(e.name, e.dim, "R = 0" if flat else "R != 0",
               "" if e.expected_flat is None else ("R = 0" if e.expected_flat else "R != 0"), ric, ax, ids)
    n_w = len(witnesses)
    cv.verdict = ricci_ok == axioms_ok == ids_ok == flat_ok == n_w

    gold = check_all(cat)
    gs = rep.section("connection and curvature components", ["name", "components", "mismatches", "unlisted nonzero"])
    for g in gold:
        gs.add(g.name, g.checked, "; ".join(g.mismatches), "; ".join(g.flagged))
    gs.verdict = all(g.passed for g in gold)

    lemma_reports = [verify_lemma(l, cat) for l in builtin_lemmas().values()]
    ls = rep.section("lemma identities", ["id", "algebra", "checks", "holds"])
    for lr in lemma_reports:
        ls.add(lr.lemma_id, lr.algebra, len(lr.results), lr.passed)
    ls.verdict = all(lr.passed for lr in lemma_reports)

    n6 = sum(1 for e in witnesses if e.dim == 6)
    sm = rep.section("summary", ["check", "result"])
    sm.add("witnesses verified", f"{len(structures)}/{n_w}")
    sm.add("betti pairs", f"{betti_ok}/{len(dim6)}")
    sm.add("curvature split",
           f"{counts['flat6']} flat + {counts['nonflat6']} non-flat + {counts['flat4']} dim-4 flat + {counts['flat2']} dim-2 flat")
    sm.add("curvature matches catalog", f"{flat_ok}/{n_w}")
    sm.add("ricci-flat (dim 6)", f"{ricci6}/{n6}")
    sm.add("ricci-flat (all)", f"{ricci_ok}/{n_w}")
    sm.add("connection axioms", f"{axioms_ok}/{n_w}")
    sm.add("curvature identities", f"{ids_ok}/{n_w}")
    sm.add("component tables", f"{sum(g.passed for g in gold)}/{len(gold)}")
    sm.add("lemma identities", f"{sum(lr.passed for lr in lemma_reports)}/{len(lemma_reports)}")
    sm.verdict = all(s.verdict is not False for s in rep.sections)
    return rep


def cmd_verify_tables(cat: Catalog, args) -> Report:
    return verify_tables(cat)


# ------------------------------------------------------------------ parsing

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS, help="output format (default md)")
    common.add_argument("--catalog", default=argparse.SUPPRESS, metavar="PATH", help="catalog file instead of the builtin one")

    p = argparse.ArgumentParser(prog="bilag", description="Exact verification of bi-Lagrangian structures on nilpotent Lie algebras.", parents=[common])
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, func, help):
        sp = sub.add_parser(name, help=help, parents=[common])
        sp.set_defaults(func=func)
        return sp

    add("list", cmd_list, "list catalog entries")
    sp = add("show", cmd_show, "show one catalog entry")
    sp.add_argument("name")
    sp = add("betti", cmd_betti, "Betti numbers b1, b2")
    sp.add_argument("name", nargs="?")
    sp.add_argument("--all", action="store_true", help="every six-dimensional entry")
    sp = add("check", cmd_check, "verify a symplectic form and optionally a bi-Lagrangian pair")
    sp.add_argument("name")
    sp.add_argument("--omega", help='2-form terms, e.g. "16+25-34" or "1/2*13+26"')
    sp.add_argument("--f", help='basis of F, e.g. "e1; e3-e4"')
    sp.add_argument("--g", help="basis of G")
    sp = add("connection", cmd_connection, "canonical connection and its axioms")
    sp.add_argument("name")
    sp = add("curvature", cmd_curvature, "curvature, Ricci tensor and identities")
    sp.add_argument("name")
    sp = add("lemmas", cmd_lemmas, "parametric bracket and Pfaffian identities")
    sp.add_argument("--id", help="a single lemma id")
    sp = add("search", cmd_search, "search for a bi-Lagrangian witness")
    sp.add_argument("name")
    sp.add_argument("--omega", help="symplectic form (default: the catalog form)")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--budget", type=int, default=50_000_000)
    sp.add_argument("--height", type=int, default=2, help="coefficient height of the grid")
    sp.add_argument("--strategy", choices=STRATEGIES, default="echelonGrid")
    add("verify-tables", cmd_verify_tables, "reproduce every table and identity")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = getattr(args, "format", "md")
    try:
        cat = load_catalog(getattr(args, "catalog", None))
        report = args.func(cat, args)
    except (UsageError, NotationError, CatalogError, RecordError, OSError) as exc:
        print(f"bilag: error: {exc}", file=sys.stderr)
        return 2
    text = render(report, fmt)
    sys.stdout.write(text if text.endswith("\n") else text + "\n")
    return 0 if report.passed else 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
