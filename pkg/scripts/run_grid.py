"""Run the verification suites over the default parameter grid and write one JSON report per grid point.

    python3 scripts/run_grid.py --out reports --max-degree 4 --workers 2
"""

import argparse
import json
import pathlib
import sys

from cyclic_quiver.config import ALL_SUITES, DEFAULT_GRID, Geometry, RunConfig
from cyclic_quiver.runner import run_suites


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="reports")
    ap.add_argument("--max-degree", type=int, default=4)
    ap.add_argument("--suites", default=",".join(s for s in ALL_SUITES if s != "intertwine"))
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    status = 0
    for n, g, d in DEFAULT_GRID:
        config = RunConfig(n=n, geometry=Geometry(g, d), max_degree=args.max_degree,
                           suites=tuple(args.suites.split(",")), workers=args.workers)
        report, timings = run_suites(config)
        path = out / f"n{n}_g{g}_d{d}.json"
        path.write_text(json.dumps(report, sort_keys=True, indent=2) + "\n")
        total = sum(timings.values())
        print(f"n={n} g={g} d={d:>2} c0={config.params().c0:>3}  {report['status']}  {total:6.1f}s  -> {path}")
        status |= report["status"] != "pass"
    return status


if __name__ == "__main__":
    sys.exit(main())
