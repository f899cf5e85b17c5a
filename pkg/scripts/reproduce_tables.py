"""Reproduce every table and identity check, writing one report per format.

    python3 scripts/reproduce_tables.py --out results/tables
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from bilag.catalog import load_catalog
from bilag.cli import verify_tables
from bilag.report import FORMATS, render

EXTENSIONS = {"json": "json", "csv": "csv", "md": "md"}


@dataclass(frozen=True)
class TablesConfig:
    out: Path = Path("results/tables")
    catalog: Optional[str] = None
    formats: tuple[str, ...] = FORMATS


def run(cfg: TablesConfig) -> bool:
    start = time.perf_counter()
    report = verify_tables(load_catalog(cfg.catalog))
    cfg.out.mkdir(parents=True, exist_ok=True)
    for fmt in cfg.formats:
        path = cfg.out / f"tables.{EXTENSIONS[fmt]}"
        path.write_text(render(report, fmt), encoding="utf-8")
        print(f"wrote {path}")
    summary = report.sections[-1]
    for check, result in summary.rows:
        print(f"{check}: {result}")
    print(f"overall: {'pass' if report.passed else 'fail'} ({time.perf_counter() - start:.1f} s)")
    return report.passed


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--out", type=Path, default=TablesConfig.out)
    p.add_argument("--catalog", default=None)
    p.add_argument("--formats", nargs="+", choices=FORMATS, default=list(FORMATS))
    a = p.parse_args()
    return 0 if run(TablesConfig(a.out, a.catalog, tuple(a.formats))) else 1


if __name__ == "__main__":
    raise SystemExit(main())
