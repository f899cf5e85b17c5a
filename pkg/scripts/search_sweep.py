"""Run the witness search over catalog algebras at several coefficient heights.

    python3 scripts/search_sweep.py                       # every form, heights 1 and 2
    python3 scripts/search_sweep.py --names L6,12 --heights 3

Results go to a CSV file (exact integers only) and a one-line summary per run
is printed as it finishes.
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from bilag.catalog import builtin
from bilag.notation import format_vector
from bilag.report import Report, render
from bilag.search import STRATEGIES, SearchConfig, search_bilagrangian


@dataclass(frozen=True)
class SweepConfig:
    names: Optional[tuple[str, ...]] = None  # None: every entry with a symplectic form
    heights: tuple[int, ...] = (1, 2)
    budget: int = 50_000_000_000  # above the 41,384,581,216 height-3 candidates in dimension 6
    strategy: str = "echelonGrid"
    seed: int = 0
    out: Path = Path("results/search_sweep.csv")


def run(cfg: SweepConfig) -> Report:
    cat = builtin()
    entries = [cat.entry(n) for n in cfg.names] if cfg.names else [e for e in cat if e.omega is not None]
    report = Report()
    s = report.section(
        "search sweep",
        ["name", "height", "outcome", "candidates", "not subalgebra", "not lagrangian", "no complement", "F", "G", "ms"],
    )
    for e in entries:
        for h in cfg.heights:
            sc = SearchConfig(seed=cfg.seed, budget=cfg.budget, coefficient_height=h, strategy=cfg.strategy)
            start = time.perf_counter()
            out = search_bilagrangian(e.algebra, e.omega, sc)
            ms = round((time.perf_counter() - start) * 1000)
            st = out.filter_stats
            f = g = ""
            if out.found is not None:
                f = "; ".join(format_vector(v) for v in out.found.f.basis)
                g = "; ".join(format_vector(v) for v in out.found.g.basis)
            s.add(e.name, h, out.exhausted or "found", out.candidates_tried, st["not subalgebra"],
                  st["not lagrangian"], st["no complement"], f, g, ms)
            print(f"{e.name} height {h}: {out.summary} ({ms} ms)", flush=True)
    return report


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--names", nargs="+")
    p.add_argument("--heights", nargs="+", type=int, default=list(SweepConfig.heights))
    p.add_argument("--budget", type=int, default=SweepConfig.budget)
    p.add_argument("--strategy", choices=STRATEGIES, default=SweepConfig.strategy)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=Path, default=SweepConfig.out)
    a = p.parse_args()
    cfg = SweepConfig(tuple(a.names) if a.names else None, tuple(a.heights), a.budget, a.strategy, a.seed, a.out)
    report = run(cfg)
    cfg.out.parent.mkdir(parents=True, exist_ok=True)
    cfg.out.write_text(render(report, "csv"), encoding="utf-8")
    print(f"wrote {cfg.out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
