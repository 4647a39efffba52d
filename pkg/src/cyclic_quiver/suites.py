"""Verification suites.

Every suite is a list of independent tasks in a fixed canonical order.  A task
returns how many identities it checked and its first failure, if any; the
suite's witness is the failure of the earliest failing task, so results do not
depend on how tasks are scheduled across workers.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from .heisenberg import (
    RankPair,
    heis_a,
    mu_lift,
    poly_P,
    zeta_monomial,
    zeta_terms,
)
from .operators import (
    ChevalleyFamily,
    Eop,
    Bop,
    Etilde,
    ModuleParams,
    chevalley,
    d,
    eps_matrix,
    gen_Bsum,
    gen_Delta,
    gen_Esum,
    phi_matrix,
    x,
)
from .polynomial import (
    ZERO,
    Diagonal,
    Identity,
    LinOp,
    Polynomial,
    SumOp,
    ad_power,
    commutator,
    matrix_of,
)
from .quiver import (
    EMPTY,
    UNIT,
    Raiz,
    can_smile,
    cartan_matrix,
    cartan_pairing,
    delta_vector,
    dim_raiz,
    enumerate_kostant,
    kostant_partitions,
    partition_to_json,
    raiz,
    simple,
    simple_vector,
    size,
    smile,
    vectors_below,
    vectors_up_to,
)
from .reps import conjugate, partition_from_rep, random_partition, rep_of_partition
from .strata import verify_semismall

SUITES = ("serre", "commlemmas", "crosscheck", "heisenberg", "pn", "intertwine", "semismall", "dims", "reps")


@dataclass
class Witness:
    relation: str
    alpha: tuple | None = None
    monomial: list | None = None
    expected: object = None
    actual: object = None

    def to_json(self) -> dict:
        return {
            "relation": self.relation,
            "alpha": None if self.alpha is None else list(self.alpha),
            "monomial": self.monomial,
            "expected": self.expected,
            "actual": self.actual,
        }


@dataclass
class TaskResult:
    checked: int = 0
    witness: Witness | None = None
    info: dict = field(default_factory=dict)


@dataclass
class SuiteReport:
    suite: str
    tasks: int = 0
    checked: int = 0
    failures: int = 0
    witness: Witness | None = None
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "status": "pass" if self.passed else "fail",
            "tasks": self.tasks,
            "checked": self.checked,
            "failures": self.failures,
            "witness": None if self.witness is None else self.witness.to_json(),
            "details": self.details,
        }


def _terms_json(terms: dict) -> list:
    return Polynomial._raw(terms).to_json()


# ---------------------------------------------------------------------------
# relation tables


@dataclass
class Relation:
    rid: str
    lhs: LinOp
    rhs: LinOp


def serre_relations(params: ModuleParams) -> list[Relation]:
    """Chevalley relations for the transposed generators.

    Transposition reverses products, so the h-relations appear with the
    opposite sign: ``[h_i, e_j] = -a_ij e_j`` and ``[h_i, f_j] = a_ij f_j``.
    """
    n = params.n
    fam = ChevalleyFamily(params)
    a = cartan_matrix(n)
    rels = []
    for i in range(n):
        for j in range(n):
            neighbour = (j - i) % n in (1, n - 1)
            if not neighbour:
                rels.append(Relation(f"[e_{i},e_{j}]=0", commutator(fam("e", i), fam("e", j)), ZERO))
                rels.append(Relation(f"[f_{i},f_{j}]=0", commutator(fam("f", i), fam("f", j)), ZERO))
            else:
                k = 1 - a[i][j]
                rels.append(Relation(f"ad(e_{i})^{k} e_{j}=0", ad_power(fam("e", i), fam("e", j), k), ZERO))
                rels.append(Relation(f"ad(f_{i})^{k} f_{j}=0", ad_power(fam("f", i), fam("f", j), k), ZERO))
    for i in range(n):
        for j in range(n):
            rhs = fam("h", i) if i == j else ZERO
            rels.append(Relation(f"[e_{i},f_{j}]={'h_%d' % i if i == j else 0}", commutator(fam("e", i), fam("f", j)), rhs))
    for i in range(n):
        for j in range(n):
            aij = a[i][j]
            rels.append(Relation(f"[h_{i},e_{j}]={-aij}e_{j}", commutator(fam("h", i), fam("e", j)), fam("e", j) * (-aij)))
            rels.append(Relation(f"[h_{i},f_{j}]={aij}f_{j}", commutator(fam("h", i), fam("f", j)), fam("f", j) * aij))
            rels.append(Relation(f"[h_{i},h_{j}]=0", commutator(fam("h", i), fam("h", j)), ZERO))
    for i in range(n):
        ci = params.ci(i)
        weight = Diagonal(lambda m, i=i, ci=ci: ci + cartan_pairing(i, m.dim(n)), n, f"c_{i}+<{i}',alpha>")
        rels.append(Relation(f"h_{i}=c_{i}+<{i}',alpha>", fam("h", i), weight))
    total = SumOp([(1, fam("h", i)) for i in range(n)])
    rels.append(Relation("sum_i h_i=c0", total, Identity(n) * params.c0))
    return rels


def lemma_raiz(n: int, max_length: int) -> list[Raiz]:
    return [Raiz(q - length + 1, q) for length in range(1, max_length + 1) for q in range(n)]


def _smile_or_none(a: Raiz, b: Raiz, n: int) -> Raiz | None:
    return smile(a, b, n) if can_smile(a, b, n) else None


def _op_or_zero(kind: Callable[[Raiz, int], LinOp], theta: Raiz | None, n: int) -> LinOp:
    return ZERO if theta is None else kind(theta, n)


def comm_relations(params: ModuleParams, max_length: int, pmax: int, literal: bool = False) -> list[Relation]:
    """Commutator identities for the building blocks E, Etilde, B, x, BB, EE, Delta.

    With ``literal=True`` the comm2/comm4 identities are taken as usually
    stated, which drops the pure ``d_theta`` term of ``Etilde(theta)``; those
    forms fail on monomials containing the part ``theta`` itself.  The default
    adds the missing boundary terms.
    """
    n = params.n
    thetas = lemma_raiz(n, max_length)
    rels = []

    def begins(t: Raiz, i: int) -> bool:
        return t.p % n == i % n

    def ends(t: Raiz, i: int) -> bool:
        return t.q % n == i % n

    for t1 in thetas:
        for t2 in thetas:
            s12, s21 = _smile_or_none(t1, t2, n), _smile_or_none(t2, t1, n)
            tag = f"{t1},{t2}"
            rels.append(Relation(f"comm1 [Et({tag})]", commutator(Etilde(t1, n), Etilde(t2, n)),
                                 SumOp([(1, _op_or_zero(Etilde, s12, n)), (-1, _op_or_zero(Etilde, s21, n))])))
            rels.append(Relation(f"comm1 [E({tag})]", commutator(Eop(t1, n), Eop(t2, n)),
                                 SumOp([(1, _op_or_zero(Eop, s21, n)), (-1, _op_or_zero(Eop, s12, n))])))
            rels.append(Relation(f"comm1 [B({tag})]", commutator(Bop(t1, n), Bop(t2, n)),
                                 SumOp([(1, _op_or_zero(Bop, s12, n)), (-1, _op_or_zero(Bop, s21, n))])))
            rels.append(Relation(f"comm3 [E,B]({tag})", commutator(Eop(t1, n), Bop(t2, n)), ZERO))
            rels.append(Relation(f"comm3 [E,x]({tag})", commutator(Eop(t1, n), x(t2, n)), _op_or_zero(x, s21, n)))
            rels.append(Relation(f"comm3 [B,x]({tag})", commutator(Bop(t1, n), x(t2, n)), _op_or_zero(x, s12, n)))
    for i in range(n):
        for j in range(n):
            rels.append(Relation(f"comm1 [BB_{i},BB_{j}]", commutator(gen_Bsum(i, n), gen_Bsum(j, n)), ZERO))
            si, sj = simple(i, n), simple(j, n)
            before = not literal and (j - i) % n == n - 1
            rels.append(Relation(f"comm2 [Et({i}),B({j})]", commutator(Etilde(si, n), Bop(sj, n)),
                                 x(sj, n) @ d(si, n) if before else ZERO))
            rels.append(Relation(f"comm2 [Et({i}),BB_{j}]", commutator(Etilde(si, n), gen_Bsum(j, n)),
                                 d(si, n) if before else ZERO))
            rhs = SumOp([(1, gen_Esum(i, n)), (-1, gen_Esum(i + 1, n))]) if i == j else ZERO
            if i == j and not literal:
                rhs = SumOp([(1, rhs), (1, x(si, n) @ d(si, n))])
            rels.append(Relation(f"comm2 [Et({i}),E({j})]", commutator(Etilde(si, n), Eop(sj, n)), rhs))
            rels.append(Relation(f"comm2 [Et({i}),x_{j}]", commutator(Etilde(si, n), x(sj, n)),
                                 Identity(n) if i == j else ZERO))
            rels.append(Relation(f"comm4 [D_{i},D_{j}]", commutator(gen_Delta(i, params), gen_Delta(j, params)), ZERO))
        for t in thetas:
            if ends(t, i) and not begins(t, i + 1):
                rhs = Bop(t, n)
            elif begins(t, i + 1) and not ends(t, i):
                rhs = -Bop(t, n)
            else:
                rhs = ZERO
            rels.append(Relation(f"comm1 [B({t}),BB_{i}]", commutator(Bop(t, n), gen_Bsum(i, n)), rhs))
            rels.append(Relation(f"comm3 [E({t}),BB_{i}]", commutator(Eop(t, n), gen_Bsum(i, n)), ZERO))
            rels.append(Relation(f"comm3 [BB_{i},x({t})]", commutator(gen_Bsum(i, n), x(t, n)),
                                 x(t, n) if begins(t, i + 1) else ZERO))
            D = gen_Delta(i, params)
            rels.append(Relation(f"comm4 [D_{i},E({t})]", commutator(D, Eop(t, n)), ZERO))
            sign = 1 if begins(t, i) else (-1 if begins(t, i + 1) else 0)
            rels.append(Relation(f"comm4 [D_{i},Et({t})]", commutator(D, Etilde(t, n)),
                                 ZERO if literal else d(t, n) * (-sign)))
            rels.append(Relation(f"comm4 [D_{i},B({t})]", commutator(D, Bop(t, n)),
                                 Bop(t, n) * cartan_pairing(i, dim_raiz(t, n))))
            rels.append(Relation(f"comm4 [D_{i},x({t})]", commutator(D, x(t, n)), x(t, n) * sign))
    for p in range(1, pmax + 1):
        ap = SumOp([(1, Etilde(Raiz(q - p * n + 1, q), n)) for q in range(n)])
        for i in range(n):
            t1 = raiz(i + 1, i + p * n - 1, n)
            t2 = raiz(i + 1, i + p * n, n)
            t3 = raiz(i, i + p * n - 1, n)
            si = simple(i, n)
            xi = x(si, n)
            rels.append(Relation(f"commagain p={p} B({i})", commutator(ap, Bop(si, n)),
                                 SumOp([(1, d(t1, n)), (1, xi @ d(t2, n))])))
            rels.append(Relation(f"commagain p={p} E({i})", commutator(ap, Eop(si, n)),
                                 SumOp([(1, d(t1, n)), (1, xi @ d(t3, n))])))
            rels.append(Relation(f"commagain p={p} xD({i})", commutator(ap, xi @ gen_Delta(i, params)),
                                 SumOp([(1, xi @ d(t3, n)), (-1, xi @ d(t2, n))])))
    return rels


def heisenberg_relations(params: ModuleParams, pmax: int) -> list[Relation]:
    n = params.n
    ps = [p for p in range(-pmax, pmax + 1)]
    a = {p: heis_a(p, params) for p in ps}
    fam = ChevalleyFamily(params)
    rels = []
    for p in ps:
        for q in ps:
            rhs = Identity(n) * (p * n * params.c0) if p == -q and p else ZERO
            rels.append(Relation(f"[a_{p},a_{q}]", commutator(a[p], a[q]), rhs))
    for p in ps:
        if p == 0:
            continue
        for i in range(n):
            rels.append(Relation(f"[a_{p},e_{i}]=0", commutator(a[p], fam("e", i)), ZERO))
            rels.append(Relation(f"[a_{p},f_{i}]=0", commutator(a[p], fam("f", i)), ZERO))
    return rels


BUILDERS = {
    "serre": serre_relations,
    "commlemmas": comm_relations,
    "heisenberg": heisenberg_relations,
}


@lru_cache(maxsize=8)
def relation_table(key: str, args: tuple) -> list[Relation]:
    return BUILDERS[key](*args)


def check_relation(key: str, args: tuple, index: int, alpha: tuple) -> TaskResult:
    rel = relation_table(key, args)[index]
    checked = 0
    try:
        for mono in enumerate_kostant(alpha):
            lhs = rel.lhs.on_monomial(mono)
            rhs = rel.rhs.on_monomial(mono)
            checked += 1
            if lhs != rhs:
                return TaskResult(checked, Witness(rel.rid, alpha, partition_to_json(mono), _terms_json(rhs),
                                                   _terms_json(lhs)))
        return TaskResult(checked)
    finally:
        # memoized images are only reused within one piece; dropping them bounds memory
        rel.lhs.clear_cache()
        rel.rhs.clear_cache()


def _relation_tasks(key: str, args: tuple, n: int, D: int) -> list:
    count = len(relation_table(key, args))
    pieces = vectors_up_to(n, D)
    return [(check_relation, (key, args, k, alpha)) for k in range(count) for alpha in pieces]


# ---------------------------------------------------------------------------
# other task kinds


def check_crosscheck(params: ModuleParams, alpha: tuple, i: int) -> TaskResult:
    n = params.n
    fam = ChevalleyFamily(params)
    up = tuple(a + b for a, b in zip(alpha, simple_vector(i, n)))
    geo_e = eps_matrix(alpha, i, n)
    dif_e = matrix_of(fam("e", i), up).transpose()
    geo_f = phi_matrix(alpha, i, params)
    dif_f = matrix_of(fam("f", i), alpha).transpose()
    checked = len(geo_e.source_basis) * len(geo_e.target_basis) * 2
    for name, g, dm in ((f"eps_{i}", geo_e, dif_e), (f"phi_{i}", geo_f, dif_f)):
        diff = g - dm
        if diff.entries:
            (r, c) = min(diff.entries)
            return TaskResult(checked, Witness(
                f"{name} = transpose", alpha, partition_to_json(g.source_basis[c]),
                str(dm.entries.get((r, c), 0)), str(g.entries.get((r, c), 0))))
    return TaskResult(checked)


def check_pn(n: int) -> TaskResult:
    """``Et(theta) . P_n`` is 1 for ``dim theta = alpha_n`` and 0 otherwise; ``f'_i . P_n = 0``."""
    P = poly_P(n)
    checked = 0
    params = ModuleParams(n, tuple([0] * n))
    for theta in lemma_raiz(n, n):
        want = {EMPTY: 1} if theta.length == n else {}
        got = Etilde(theta, n)(P).terms
        checked += 1
        if got != want:
            return TaskResult(checked, Witness(f"Et({theta}).P_{n}", delta_vector(n), None, _terms_json(want), _terms_json(got)))
    for i in range(n):
        got = chevalley("f'", i, params)(P).terms
        checked += 1
        if got:
            return TaskResult(checked, Witness(f"f'_{i}.P_{n}=0", delta_vector(n), None, [], _terms_json(got)))
    return TaskResult(checked)


@lru_cache(maxsize=4)
def _intertwine_ops(n: int, k: int, c: tuple, max_length: int) -> list:
    params = ModuleParams(n, c)
    pair = RankPair(n, k)
    small = ChevalleyFamily(params)
    ops = []
    for kind in ("e", "h", "f"):
        for i in range(n):
            ops.append((f"{kind}_{i}", small(kind, i), mu_lift(kind, i, pair, params)))
    for theta in lemma_raiz(n, max_length):
        ops.append((f"Et({theta})", Etilde(theta, n), mu_lift("Etilde", theta, pair, params)))
    return ops


def check_intertwine(n: int, k: int, c: tuple, max_length: int, alpha: tuple) -> TaskResult:
    ops = _intertwine_ops(n, k, c, max_length)
    checked = 0
    failure = None
    for A in kostant_partitions(alpha):
        zA = zeta_monomial(A, n)
        for name, small, big in ops:
            lhs = small.on_monomial(zA)
            rhs = zeta_terms(big.act(A), n)
            checked += 1
            if lhs != rhs:
                failure = Witness(f"zeta(mu({name}).P) = {name}.zeta(P) for (n,k)=({n},{k})", alpha,
                                  partition_to_json(A), _terms_json(lhs), _terms_json(rhs))
                break
        if failure:
            break
    for _, small, big in ops:
        small.clear_cache()
        big.clear_cache()
    return TaskResult(checked, failure)


def check_semismall(n: int, alpha: tuple, i: int, literal: bool = False) -> TaskResult:
    rep = verify_semismall(alpha, i, n)
    info = {"literal_violations": len(rep.literal_violations)}
    if rep.passed and not (literal and rep.literal_violations):
        return TaskResult(len(rep.rows), info=info)
    if rep.failures:
        f = rep.failures[0]
    elif not rep.top_attained:
        f = {"reason": "top dimension not attained"}
    else:
        f = dict(rep.literal_violations[0], reason="dim + r <= |alpha| + 1 - r")
    return TaskResult(len(rep.rows), Witness(f"semismall i={i}: {f.get('reason')}", alpha, f.get("group"), None, f), info)


def check_reps(n: int, count: int, max_size: int, seed: int) -> TaskResult:
    rng = random.Random(f"{seed}:{n}")
    checked = 0
    for _ in range(count):
        kappa = random_partition(n, max_size, rng)
        rep = conjugate(rep_of_partition(kappa, n), rng)
        for s in range(n):
            got = partition_from_rep(rep, s)
            checked += 1
            if got != kappa:
                return TaskResult(checked, Witness(f"rank recovery s={s}", kappa.dim(n), partition_to_json(kappa),
                                                   partition_to_json(kappa), partition_to_json(got)))
    return TaskResult(checked)


# ---------------------------------------------------------------------------
# runner


def _run_task(task):
    fn, args = task
    return fn(*args)


def run_tasks(name: str, tasks: list, workers: int = 1, details: dict | None = None) -> SuiteReport:
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_task, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    else:
        results = [_run_task(t) for t in tasks]
    report = SuiteReport(name, tasks=len(tasks), details=dict(details or {}))
    totals: dict = {}
    for res in results:
        for key, v in res.info.items():
            totals[key] = totals.get(key, 0) + v
        report.checked += res.checked
        if res.witness is not None:
            report.failures += 1
            if report.witness is None:
                report.witness = res.witness
    if totals:
        report.details["totals"] = dict(sorted(totals.items()))
    return report


def serre_suite(params: ModuleParams, D: int, workers: int = 1) -> SuiteReport:
    if D < 0:
        raise ValueError("max degree must be nonnegative")
    return run_tasks("serre", _relation_tasks("serre", (params,), params.n, D), workers,
                     {"n": params.n, "max_degree": D})


def comm_suite(params: ModuleParams, D: int, workers: int = 1, max_length: int | None = None, pmax: int = 2,
               literal: bool = False) -> SuiteReport:
    L = params.n + 1 if max_length is None else max_length
    args = (params, L, pmax, literal)
    report = run_tasks("commlemmas", _relation_tasks("commlemmas", args, params.n, D), workers,
                       {"n": params.n, "max_degree": D, "max_length": L, "pmax": pmax,
                        "variant": "literal" if literal else "corrected"})
    if not report.passed:
        report.details["failing_relations"] = failing_relations("commlemmas", args, params.n, D)
    return report


def failing_relations(key: str, args: tuple, n: int, D: int) -> list[str]:
    """Ids of every relation in a table that fails on some piece."""
    out = []
    pieces = vectors_up_to(n, D)
    for k, rel in enumerate(relation_table(key, args)):
        if any(check_relation(key, args, k, alpha).witness for alpha in pieces):
            out.append(rel.rid)
    return out


def heisenberg_suite(params: ModuleParams, D: int, pmax: int, workers: int = 1) -> SuiteReport:
    if pmax < 1:
        raise ValueError("pmax must be positive")
    return run_tasks("heisenberg", _relation_tasks("heisenberg", (params, pmax), params.n, D), workers,
                     {"n": params.n, "max_degree": D, "pmax": pmax})


def crosscheck_geometric(params: ModuleParams, D: int, workers: int = 1) -> SuiteReport:
    tasks = [(check_crosscheck, (params, alpha, i)) for alpha in vectors_up_to(params.n, D) for i in range(params.n)]
    return run_tasks("crosscheck", tasks, workers, {"n": params.n, "max_degree": D})


def pn_suite(n_max: int, workers: int = 1) -> SuiteReport:
    tasks = [(check_pn, (n,)) for n in range(2, n_max + 1)]
    return run_tasks("pn", tasks, workers, {"n_max": n_max})


def intertwine_suite(params: ModuleParams, k: int, cycles: int = 3, workers: int = 1,
                     max_length: int | None = None) -> SuiteReport:
    """Check ``xi . zeta(P) = zeta(mu(xi) . P)`` on rank-kn monomials below ``cycles * alpha_{kn}``."""
    n = params.n
    pair = RankPair(n, k)
    L = pair.big if max_length is None else max_length
    tasks = [(check_intertwine, (n, k, params.c, L, alpha)) for alpha in vectors_below(delta_vector(pair.big, cycles))]
    return run_tasks("intertwine", tasks, workers, {"n": n, "k": k, "cycles": cycles, "etilde_max_length": L})


def semismall_suite(n: int, D: int, workers: int = 1, literal: bool = False) -> SuiteReport:
    tasks = [(check_semismall, (n, alpha, i, literal)) for alpha in vectors_up_to(n, D) for i in range(n)]
    return run_tasks("semismall", tasks, workers,
                     {"n": n, "max_degree": D, "variant": "literal" if literal else "fiber-locus"})


def reps_suite(n: int, count: int = 200, max_size: int = 6, seed: int = 0, workers: int = 1) -> SuiteReport:
    return run_tasks("reps", [(check_reps, (n, count, max_size, seed))], workers,
                     {"n": n, "count": count, "max_size": max_size, "seed": seed})


__all__ = [
    "SUITES",
    "Witness",
    "SuiteReport",
    "Relation",
    "serre_relations",
    "comm_relations",
    "heisenberg_relations",
    "serre_suite",
    "comm_suite",
    "heisenberg_suite",
    "crosscheck_geometric",
    "pn_suite",
    "intertwine_suite",
    "semismall_suite",
    "reps_suite",
    "run_tasks",
    "UNIT",
    "size",
]
