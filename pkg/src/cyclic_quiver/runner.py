"""Suite orchestration and table emission behind the command line."""

from __future__ import annotations

import time
from collections import Counter

from .config import RunConfig
from .counting import kostant_series
from .operators import ModuleParams, h_eigenvalue
from .quiver import (
    covering_degree,
    enumerate_kostant,
    enumerate_multipartitions,
    size,
    vectors_up_to,
)
from .strata import component_table, dim_stratum
from .suites import (
    SuiteReport,
    TaskResult,
    Witness,
    comm_suite,
    crosscheck_geometric,
    heisenberg_suite,
    intertwine_suite,
    pn_suite,
    reps_suite,
    run_tasks,
    semismall_suite,
    serre_suite,
)


def dims_row(alpha: tuple, params: ModuleParams, series: dict) -> dict:
    n = params.n
    fk = enumerate_kostant(alpha)
    fm = enumerate_multipartitions(alpha)
    strata = Counter(dim_stratum(mu, n).dim for mu in fm)
    return {
        "alpha": list(alpha),
        "FK": len(fk),
        "FM": len(fm),
        "euler_product": series[alpha],
        "max_stratum_dim": max(strata),
        "top_strata": strata[size(alpha)],
        "strata_by_dim": {str(k): v for k, v in sorted(strata.items())},
        "h_eigenvalues": [str(h_eigenvalue(i, alpha, params)) for i in range(n)],
    }


def emit_dims(params: ModuleParams, D: int) -> list[dict]:
    """Per piece: |FK|, |FM|, the Euler-product count, stratum dimensions and h-eigenvalues."""
    series = kostant_series(params.n, D)
    return [dims_row(alpha, params, series) for alpha in vectors_up_to(params.n, D)]


def check_dims(params: ModuleParams, alpha: tuple, series: dict) -> TaskResult:
    row = dims_row(alpha, params, series)
    problems = []
    if row["FK"] != row["euler_product"]:
        problems.append(("|FK| = Euler product", row["euler_product"], row["FK"]))
    if row["max_stratum_dim"] != size(alpha) or row["top_strata"] != row["FK"]:
        problems.append(("top strata are the simple multipartitions", [size(alpha), row["FK"]],
                         [row["max_stratum_dim"], row["top_strata"]]))
    if not problems:
        return TaskResult(2)
    rel, want, got = problems[0]
    return TaskResult(2, Witness(rel, alpha, None, want, got))


def dims_suite(params: ModuleParams, D: int, workers: int = 1) -> SuiteReport:
    series = kostant_series(params.n, D)
    tasks = [(check_dims, (params, alpha, {alpha: series[alpha]})) for alpha in vectors_up_to(params.n, D)]
    return run_tasks("dims", tasks, workers, {"n": params.n, "max_degree": D})


def emit_strata(alpha: tuple, n: int) -> list[dict]:
    rows = []
    for mu in enumerate_multipartitions(tuple(alpha)):
        rep = dim_stratum(mu, n)
        rows.append(dict(rep.to_json(), covering_degree=covering_degree(mu, n), simple=mu.is_simple))
    return rows


def emit_components(alpha: tuple, i: int, params: ModuleParams) -> list[dict]:
    return component_table(tuple(alpha), i, params)


def _suite(name: str, config: RunConfig) -> SuiteReport:
    params = config.params()
    D, w = config.max_degree, config.workers
    if name == "serre":
        return serre_suite(params, D, w)
    if name == "commlemmas":
        return comm_suite(params, D, w, pmax=config.pmax, literal=config.literal)
    if name == "crosscheck":
        return crosscheck_geometric(params, D, w)
    if name == "heisenberg":
        return heisenberg_suite(params, D, config.pmax, w)
    if name == "pn":
        return pn_suite(params.n, w)
    if name == "intertwine":
        return intertwine_suite(params, config.fold_k, config.cycles, w)
    if name == "semismall":
        return semismall_suite(params.n, D, w, literal=config.literal)
    if name == "dims":
        return dims_suite(params, D, w)
    if name == "reps":
        return reps_suite(params.n, config.rep_count, config.rep_size, config.seed, w)
    raise KeyError(name)


def run_suites(config: RunConfig) -> tuple[dict, dict]:
    """Run the selected suites; returns the deterministic report and, separately, wall times."""
    suites = []
    timings = {}
    for name in config.suites:
        start = time.perf_counter()
        suites.append(_suite(name, config).to_json())
        timings[name] = time.perf_counter() - start
    report = {
        "config": config.to_json(),
        "status": "pass" if all(s["status"] == "pass" for s in suites) else "fail",
        "suites": suites,
    }
    return report, timings

