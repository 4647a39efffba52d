"""Wall time and peak memory of each suite at the acceptance scale; prints a table.

    python3 scripts/benchmark.py            # everything except the long intertwining sweep
    python3 scripts/benchmark.py --all      # include it (roughly half an hour on one core)
"""

import argparse
import resource
import time

from cyclic_quiver.config import DEFAULT_GRID, Geometry
from cyclic_quiver.operators import ModuleParams
from cyclic_quiver.suites import (
    comm_suite,
    crosscheck_geometric,
    heisenberg_suite,
    intertwine_suite,
    pn_suite,
    reps_suite,
    semismall_suite,
    serre_suite,
)


def jobs(include_long: bool):
    geo = {n: ModuleParams.from_geometry(n, 0, 1) for n in (2, 3, 4)}
    for n, g, d in DEFAULT_GRID:
        yield f"serre n={n} g={g} d={d}", lambda n=n, g=g, d=d: serre_suite(Geometry(g, d).params(n), 5 if n < 4 else 4)
    for n in (2, 3):
        yield f"commlemmas n={n} D=4", lambda n=n: comm_suite(geo[n], 4)
        yield f"crosscheck n={n} D=4", lambda n=n: crosscheck_geometric(geo[n], 4)
        yield f"heisenberg n={n} D={4 * n}", lambda n=n: heisenberg_suite(geo[n], 4 * n, 2)
        yield f"semismall n={n} D=4", lambda n=n: semismall_suite(n, 4)
        yield f"reps n={n}", lambda n=n: reps_suite(n, 200, 6)
    yield "pn n<=6", lambda: pn_suite(6)
    if include_long:
        for n, k in ((2, 2), (2, 3), (3, 2)):
            yield f"intertwine n={n} k={k}", lambda n=n, k=k: intertwine_suite(geo[n], k, 3, max_length=3 * n * k)


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--all", action="store_true")
    args = ap.parse_args()
    print(f"{'suite':32} {'status':6} {'checked':>9} {'seconds':>8} {'peak MB':>8}")
    for name, job in jobs(args.all):
        start = time.perf_counter()
        report = job()
        secs = time.perf_counter() - start
        peak = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss // 1024
        print(f"{name:32} {'pass' if report.passed else 'FAIL':6} {report.checked:>9} {secs:>8.1f} {peak:>8}", flush=True)


if __name__ == "__main__":
    main()
