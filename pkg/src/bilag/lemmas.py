"""Polynomial identities behind the non-existence arguments.

Each lemma record in ``data/lemmas.txt`` names an algebra, binds a few
symbols with ``let`` and lists ``check`` lines.  A check is a small
expression in the following language, evaluated exactly:

* ``e1 .. en`` are basis vectors; any other free identifier (``a2``,
  ``b5``, ``w16``, ``a5p``) is a polynomial parameter.
* ``+ - *`` and integer ``**`` on polynomials, vectors and 2-forms.
* ``[u, v]`` is the Lie bracket; ``alpha(i, j)`` is the basis 2-form.
* ``omega(w, u, v)`` pairs a 2-form with two vectors.
* ``pf(w)``, ``det(w)``: Pfaffian and determinant of the Gram matrix.
* ``subs(expr, x=value, ...)`` substitutes parameters.
* ``general_closed(w)`` holds when ``w`` is closed and its parameters
  sweep out every closed 2-form.
* a check is either ``lhs == rhs`` or ``proportional(lhs, rhs)``
  (equal up to a nonzero rational scalar) or a boolean call.
"""

from __future__ import annotations

import ast
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from itertools import combinations
from typing import Optional

from . import linalg
from .catalog import Catalog, builtin
from .forms import closed_two_forms_basis, d_matrix
from .lie import LieAlgebra
from .poly import (
    ParamPoly,
    ParamVector,
    determinant,
    form_matrix,
    parametric_bracket,
    pfaffian,
    proportionality,
)
from .records import RecordError, iter_records


class LemmaError(ValueError):
    pass


class ParamForm:
    """A 2-form whose coefficients are polynomials, keyed by 0-based ``(i, j)``, ``i < j``."""

    __slots__ = ("dim", "coeffs")

    def __init__(self, dim: int, coeffs=None):
        self.dim = dim
        self.coeffs = {k: v for k, v in (coeffs or {}).items() if v}

    def __add__(self, other: "ParamForm") -> "ParamForm":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, ParamPoly()) + v
        return ParamForm(self.dim, out)

    def __neg__(self) -> "ParamForm":
        return ParamForm(self.dim, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other: "ParamForm") -> "ParamForm":
        return self + (-other)

    def scaled(self, c: ParamPoly) -> "ParamForm":
        return ParamForm(self.dim, {k: c * v for k, v in self.coeffs.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, ParamForm) and self.coeffs == other.coeffs

    def pair(self, u: ParamVector, v: ParamVector) -> ParamPoly:
        total = ParamPoly()
        for (i, j), c in self.coeffs.items():
            total = total + c * (u[i] * v[j] - u[j] * v[i])
        return total

    def gram(self):
        return form_matrix(self.coeffs, self.dim)

    def __str__(self) -> str:
        return " + ".join(f"({c})*alpha{i + 1}{j + 1}" for (i, j), c in sorted(self.coeffs.items())) or "0"


def general_closed(g: LieAlgebra, w: ParamForm) -> bool:
    """``w`` is linear in its parameters, closed, and spans the space of closed 2-forms."""
    n = g.dim
    pairs = list(combinations(range(n), 2))
    params = sorted({v for c in w.coeffs.values() for v in c.variables()})
    columns = []
    for p in params:
        col = []
        for key in pairs:
            c = w.coeffs.get(key, ParamPoly())
            if c.degree() > 1 or c.constant_value() not in (None, 0):
                return False
            col.append(c.terms.get(((p, 1),), Fraction(0)))
        columns.append(col)
    d2 = d_matrix(g, 2)
    if d2 and any(any(linalg.matvec(d2, col)) for col in columns):
        return False
    return linalg.rank(columns) == len(columns) == len(closed_two_forms_basis(g))


_FUNCS = ("alpha", "omega", "pf", "det", "subs", "proportional", "general_closed")


class Evaluator:
    """Evaluates one expression of the lemma language on a fixed algebra."""

    def __init__(self, g: LieAlgebra, env: Optional[dict] = None):
        self.g = g
        self.env = dict(env or {})

    def eval(self, text: str):
        try:
            tree = ast.parse(text.strip(), mode="eval")
        except SyntaxError as exc:
            raise LemmaError(f"syntax error in {text!r}: {exc.msg}") from None
        return self._eval(tree.body)

    def _name(self, name: str):
        if name in self.env:
            return self.env[name]
        if name.startswith("e") and name[1:].isdigit():
            k = int(name[1:])
            if not 1 <= k <= self.g.dim:
                raise LemmaError(f"{name} out of range for dimension {self.g.dim}")
            return tuple(ParamPoly.const(int(i == k - 1)) for i in range(self.g.dim))
        if name in _FUNCS:
            raise LemmaError(f"{name} must be called")
        return ParamPoly.var(name)

    def _eval(self, node):
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return ParamPoly.const(node.value)
        if isinstance(node, ast.Name):
            return self._name(node.id)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            x = self._eval(node.operand)
            return x if isinstance(node.op, ast.UAdd) else _neg(x)
        if isinstance(node, ast.BinOp):
            return self._binop(node)
        if isinstance(node, ast.List):
            if len(node.elts) != 2:
                raise LemmaError("a bracket takes exactly two entries")
            u, v = (self._eval(x) for x in node.elts)
            if not (isinstance(u, tuple) and isinstance(v, tuple)):
                raise LemmaError("bracket entries must be vectors")
            return parametric_bracket(self.g, u, v)
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name):
            return self._call(node)
        if isinstance(node, ast.Compare) and len(node.ops) == 1 and isinstance(node.ops[0], ast.Eq):
            return Comparison(self._eval(node.left), self._eval(node.comparators[0]))
        raise LemmaError(f"unsupported expression: {ast.unparse(node)}")

    def _binop(self, node):
        x, y = self._eval(node.left), self._eval(node.right)
        if isinstance(node.op, ast.Add):
            return _add(x, y)
        if isinstance(node.op, ast.Sub):
            return _add(x, _neg(y))
        if isinstance(node.op, ast.Mult):
            return _mul(x, y)
        if isinstance(node.op, ast.Div):
            c = y.constant_value() if isinstance(y, ParamPoly) else None
            if not c:
                raise LemmaError("division only by nonzero constants")
            return _mul(ParamPoly.const(1 / c), x)
        if isinstance(node.op, ast.Pow):
            k = y.constant_value() if isinstance(y, ParamPoly) else None
            if not isinstance(x, ParamPoly) or k is None or k.denominator != 1 or k < 0:
                raise LemmaError("powers: polynomial base, non-negative integer exponent")
            return x ** int(k)
        raise LemmaError(f"unsupported operator in {ast.unparse(node)}")

    def _call(self, node):
        name = node.func.id
        if name == "subs":
            if len(node.args) != 1:
                raise LemmaError("subs(expr, name=value, ...)")
            values = {kw.arg: self._eval(kw.value) for kw in node.keywords}
            return _subs(self._eval(node.args[0]), values)
        if node.keywords:
            raise LemmaError(f"{name} takes no keyword arguments")
        args = [self._eval(a) for a in node.args]
        if name == "alpha":
            i, j = (_small_int(a) for a in args)
            if not (1 <= i <= self.g.dim and 1 <= j <= self.g.dim) or i == j:
                raise LemmaError(f"alpha({i},{j}) out of range")
            sign = 1 if i < j else -1
            key = (min(i, j) - 1, max(i, j) - 1)
            return ParamForm(self.g.dim, {key: ParamPoly.const(sign)})
        if name == "omega":
            w, u, v = args
            return _form(w).pair(u, v)
        if name == "pf":
            return pfaffian(_form(args[0]).gram())
        if name == "det":
            return determinant(_form(args[0]).gram())
        if name == "proportional":
            return Proportion(*args)
        if name == "general_closed":
            return general_closed(self.g, _form(args[0]))
        raise LemmaError(f"unknown function {name!r}")


def _small_int(x) -> int:
    c = x.constant_value() if isinstance(x, ParamPoly) else None
    if c is None or c.denominator != 1:
        raise LemmaError("index must be an integer")
    return int(c)


def _form(x) -> ParamForm:
    if not isinstance(x, ParamForm):
        raise LemmaError("expected a 2-form")
    return x


def _neg(x):
    if isinstance(x, tuple):
        return tuple(-a for a in x)
    return -x


def _add(x, y):
    if isinstance(x, tuple) and isinstance(y, tuple):
        return tuple(a + b for a, b in zip(x, y))
    if isinstance(x, ParamForm) and isinstance(y, ParamForm):
        return x + y
    if isinstance(x, ParamPoly) and isinstance(y, ParamPoly):
        return x + y
    raise LemmaError("cannot add values of different kinds")


def _mul(x, y):
    if isinstance(x, ParamPoly) and isinstance(y, ParamPoly):
        return x * y
    if isinstance(y, ParamPoly):
        x, y = y, x
    if isinstance(x, ParamPoly):
        if isinstance(y, tuple):
            return tuple(x * a for a in y)
        if isinstance(y, ParamForm):
            return y.scaled(x)
    raise LemmaError("products need at least one polynomial factor")


def _subs(x, values):
    if isinstance(x, tuple):
        return tuple(a.subs(values) for a in x)
    if isinstance(x, ParamForm):
        return ParamForm(x.dim, {k: c.subs(values) for k, c in x.coeffs.items()})
    return x.subs(values)


def _show(x) -> str:
    if isinstance(x, tuple):
        return "(" + ", ".join(str(a) for a in x) + ")"
    return str(x)


@dataclass
class Comparison:
    lhs: object
    rhs: object

    def outcome(self) -> tuple[bool, str]:
        if isinstance(self.lhs, tuple) and isinstance(self.rhs, tuple):
            for k, (a, b) in enumerate(zip(self.lhs, self.rhs)):
                if a != b:
                    return False, f"e{k + 1} coefficient: computed {a}, expected {b}"
            return True, _show(self.lhs)
        if type(self.lhs) is not type(self.rhs):
            return False, "sides have different kinds"
        if self.lhs == self.rhs:
            return True, _show(self.lhs)
        if isinstance(self.lhs, ParamPoly):
            diff = self.lhs - self.rhs
            mono, c = next(iter(diff.terms.items()))
            term = ParamPoly({mono: 1})
            return False, f"coefficient of {term}: computed {self.lhs.terms.get(mono, 0)}, expected {self.rhs.terms.get(mono, 0)}"
        return False, f"computed {_show(self.lhs)}, expected {_show(self.rhs)}"


@dataclass
class Proportion:
    lhs: ParamPoly
    rhs: ParamPoly

    def outcome(self) -> tuple[bool, str]:
        c = proportionality(self.lhs, self.rhs)
        if c is None or c == 0 or self.rhs.is_zero():
            return False, f"{self.lhs} is not a nonzero multiple of {self.rhs}"
        return True, f"scalar {c}"


@dataclass
class CheckResult:
    text: str
    passed: bool
    detail: str


@dataclass
class Lemma:
    id: str
    algebra: str
    title: str
    lets: list[tuple[str, str]]
    checks: list[str]


@dataclass
class LemmaReport:
    lemma_id: str
    algebra: str
    title: str
    results: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)


def parse_lemmas(text: str) -> dict[str, Lemma]:
    out: dict[str, Lemma] = {}
    for lineno, rec in iter_records(text):
        fields: dict[str, list[str]] = {}
        for _, key, value in rec:
            fields.setdefault(key, []).append(value)
        unknown = set(fields) - {"id", "algebra", "title", "let", "check"}
        if unknown:
            raise RecordError(f"record at line {lineno}: unknown fields {sorted(unknown)}")
        for key in ("id", "algebra", "title"):
            if len(fields.get(key, ())) != 1:
                raise RecordError(f"record at line {lineno}: exactly one {key!r} required")
        lets = []
        for line in fields.get("let", ()):
            name, sep, expr = line.partition("=")
            if not sep or not name.strip().isidentifier():
                raise RecordError(f"record at line {lineno}: bad let {line!r}")
            lets.append((name.strip(), expr.strip()))
        lemma = Lemma(fields["id"][0], fields["algebra"][0], fields["title"][0], lets, fields.get("check", []))
        if lemma.id in out:
            raise RecordError(f"record at line {lineno}: duplicate id {lemma.id!r}")
        out[lemma.id] = lemma
    return out


@lru_cache(maxsize=None)
def builtin_lemmas() -> dict[str, Lemma]:
    text = resources.files("bilag").joinpath("data/lemmas.txt").read_text(encoding="utf-8")
    return parse_lemmas(text)


def lemma_ids() -> list[str]:
    return list(builtin_lemmas())


def run_check(g: LieAlgebra, env: dict, text: str) -> CheckResult:
    try:
        value = Evaluator(g, env).eval(text)
    except LemmaError as exc:
        return CheckResult(text, False, f"error: {exc}")
    if isinstance(value, (Comparison, Proportion)):
        ok, detail = value.outcome()
    elif isinstance(value, bool):
        ok, detail = value, ""
    else:
        return CheckResult(text, False, "not a check: expected '==', proportional(...) or a predicate")
    return CheckResult(text, ok, detail)


def verify_lemma(lemma: Lemma, catalog: Optional[Catalog] = None) -> LemmaReport:
    g = (catalog or builtin()).entry(lemma.algebra).algebra
    env: dict = {}
    for name, expr in lemma.lets:
        env[name] = Evaluator(g, env).eval(expr)
    report = LemmaReport(lemma.id, lemma.algebra, lemma.title)
    report.results = [run_check(g, env, c) for c in lemma.checks]
    return report


def verify_lemma_identity(lemma_id: str) -> LemmaReport:
    lemmas = builtin_lemmas()
    if lemma_id not in lemmas:
        raise KeyError(f"unknown lemma id {lemma_id!r}")
    return verify_lemma(lemmas[lemma_id])


def verify_all() -> list[LemmaReport]:
    return [verify_lemma(l) for l in builtin_lemmas().values()]

