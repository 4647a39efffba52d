"""Dimension formulas for strata and fibers of K_alpha, and the component catalog of the Hecke correspondence."""

from __future__ import annotations

from dataclasses import dataclass, field

from .operators import ModuleParams, M_coeff, eps_coeff, phi_coeff
from .quiver import (
    DimensionVector,
    KostantPartition,
    Multipartition,
    Raiz,
    add_vectors,
    enumerate_kostant,
    enumerate_multipartitions,
    frown,
    kappa_coords,
    kappa_cumulative,
    partition_to_json,
    simple,
    simple_vector,
    size,
    smile,
)

HORIZONTAL = "horizontal-C-fibration"
VERTICAL = "vertical-P1-fibration"
FINITE = "finite-cover"
TARGET = "target-dominant"


def _nonempty(kappa: KostantPartition) -> None:
    if not kappa:
        raise ValueError("the empty partition has no simple fiber")


def dim_simple_fiber(kappa: KostantPartition, n: int) -> int:
    """``|dim kappa| - K(kappa)``."""
    kappa = KostantPartition(kappa)
    _nonempty(kappa)
    return size(kappa.dim(n)) - len(kappa)


@dataclass(frozen=True)
class StratumReport:
    multipartition: Multipartition
    dim: int
    fiber_dims: tuple

    def to_json(self) -> dict:
        return {
            "multipartition": [partition_to_json(g) for g in self.multipartition],
            "dim": self.dim,
            "fiber_dims": list(self.fiber_dims),
        }


def dim_stratum(mu: Multipartition, n: int) -> StratumReport:
    mu = Multipartition(mu)
    fibers = tuple(dim_simple_fiber(g, n) for g in mu)
    dim = size(mu.dim(n)) + sum(1 - len(g) for g in mu)
    return StratumReport(mu, dim, fibers)


def dim_X(kappa: KostantPartition, s: int, n: int) -> int:
    return sum((s - p) * m for (p, q), m in kappa_coords(KostantPartition(kappa), s, n).items() if p <= s)


def dim_step_fiber(kappa: KostantPartition, s: int, t: int, n: int) -> int:
    """``kappa_{<=t-1}^{>=s}``; only defined for ``t <= s``."""
    if t > s:
        raise ValueError(f"step index t={t} exceeds s={s}")
    return kappa_cumulative(kappa_coords(KostantPartition(kappa), s, n), t - 1, s)


def dim_pi_fiber(kappa: KostantPartition, s: int, n: int) -> int:
    total = 0
    for (p, q), m in kappa_coords(KostantPartition(kappa), s, n).items():
        total += m * ((q - p) if p > s else (q - s))
    return total


def lowest_step(kappa: KostantPartition, s: int, n: int) -> int:
    """Smallest ``t`` with a possibly nonzero step fiber."""
    coords = kappa_coords(KostantPartition(kappa), s, n)
    return min((p for p, _ in coords), default=s) + 1


def hecke_fiber_dim(kappa: KostantPartition, i: int, n: int) -> int:
    """``e_i(kappa)``: number of parts ending at ``i``, the dimension of the Hom space."""
    return sum(1 for theta in kappa if theta.q % n == i % n)


# ---------------------------------------------------------------------------
# components of the Hecke correspondence


@dataclass(frozen=True)
class ComponentRecord:
    kind: str
    source_partition: KostantPartition
    target_partition: KostantPartition
    multiplicity: int
    pivot: Raiz | None = None

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "source": partition_to_json(self.source_partition),
            "target": partition_to_json(self.target_partition),
            "multiplicity": self.multiplicity,
            "pivot": None if self.pivot is None else str(self.pivot),
        }


def components_over_target(A_prime: KostantPartition, i: int, n: int) -> list[ComponentRecord]:
    A_prime = KostantPartition(A_prime)
    s = simple(i, n)
    out = []
    for theta in A_prime.distinct():
        if theta.q % n == i % n:
            source = A_prime.replace(theta, frown(theta, s, n))
            out.append(ComponentRecord(TARGET, source, A_prime, A_prime.count(theta), theta))
    return out


def components_over_source(A: KostantPartition, i: int, n: int) -> list[ComponentRecord]:
    A = KostantPartition(A)
    s = simple(i, n)
    out = [ComponentRecord(HORIZONTAL, A, A.add(s), 1)]
    for theta in A.distinct():
        if theta.q % n == (i - 1) % n:
            out.append(ComponentRecord(VERTICAL, A, A.replace(theta, smile(theta, s, n)), A.count(theta), theta))
    for theta in A.distinct():
        if theta.p % n == (i + 1) % n:
            out.append(ComponentRecord(FINITE, A, A.replace(theta, smile(s, theta, n)), A.count(theta), theta))
    return out


def record_value(rec: ComponentRecord, i: int, params: ModuleParams):
    """The scalar a component contributes to the geometric ``e_i`` or ``f_i``."""
    if rec.kind == TARGET:
        return rec.multiplicity
    if rec.kind == HORIZONTAL:
        return M_coeff(i, rec.source_partition, params)
    if rec.kind == VERTICAL:
        return -rec.multiplicity
    return rec.multiplicity


def component_table(alpha: DimensionVector, i: int, params: ModuleParams) -> list[dict]:
    """All records over source and target top components of one piece, with the matching matrix entries."""
    n = params.n
    alpha = tuple(alpha)
    rows = []
    for A in enumerate_kostant(alpha):
        for rec in components_over_source(A, i, n):
            rows.append(dict(rec.to_json(), side="source", value=str(record_value(rec, i, params)),
                             phi=str(phi_coeff(rec.target_partition, A, i, params))))
    for Ap in enumerate_kostant(add_vectors(alpha, simple_vector(i, n))):
        for rec in components_over_target(Ap, i, n):
            rows.append(dict(rec.to_json(), side="target", value=str(record_value(rec, i, params)),
                             eps=eps_coeff(rec.source_partition, Ap, i, n)))
    return rows


# ---------------------------------------------------------------------------
# semismallness


class EnumerationOverflow(RuntimeError):
    pass


@dataclass
class SemismallReport:
    alpha: DimensionVector
    i: int
    rows: list = field(default_factory=list)
    failures: list = field(default_factory=list)
    literal_violations: list = field(default_factory=list)
    top_attained: bool = False

    @property
    def passed(self) -> bool:
        return not self.failures and self.top_attained

    def to_json(self) -> dict:
        return {
            "alpha": list(self.alpha),
            "i": self.i,
            "status": "pass" if self.passed else "fail",
            "rows": len(self.rows),
            "top_attained": self.top_attained,
            "failures": self.failures,
            "literal_violations": len(self.literal_violations),
        }


def verify_semismall(alpha: DimensionVector, i: int, n: int, limit: int = 200_000) -> SemismallReport:
    """Exhaustive check of the fiber-dimension bounds for ``pi: E^i_alpha -> K_{alpha+i}``.

    For each stratum ``mu'`` of ``K_{alpha+i}`` and each group ``kappa`` with
    ``r = e_i(kappa) - 1 >= 0``:

    * the locus ``Z`` of points with local type ``kappa`` has codimension
      ``K(kappa) - 1`` and ``r`` never exceeds it;
    * ``dim(stratum) + r <= |alpha| + 1`` (the r-locus inside the stratum has
      codimension at least r, so its codimension in ``K_{alpha+i}`` is at
      least ``2r``), with equality attained.

    Rows where the unconditional inequality ``dim + r <= |alpha| + 1 - r``
    fails are collected in ``literal_violations``; they do not fail the check.
    """
    alpha = tuple(alpha)
    top = size(alpha) + 1
    target = add_vectors(alpha, simple_vector(i, n))
    mus = enumerate_multipartitions(target)
    if len(mus) > limit:
        raise EnumerationOverflow(f"{len(mus)} multipartitions exceed the limit {limit}")
    report = SemismallReport(alpha, i % n)
    for mu in mus:
        st = dim_stratum(mu, n)
        for kappa in dict.fromkeys(mu):
            e = hecke_fiber_dim(kappa, i, n)
            if e == 0:
                continue
            r = e - 1
            locus_dim = (top - size(kappa.dim(n))) + 1 + dim_simple_fiber(kappa, n)
            codim = top - locus_dim
            row = {
                "multipartition": [partition_to_json(g) for g in mu],
                "group": partition_to_json(kappa),
                "stratum_dim": st.dim,
                "r": r,
                "locus_codim": codim,
                "preimage_dim": st.dim + r,
            }
            report.rows.append(row)
            if codim != len(kappa) - 1 or r > codim:
                report.failures.append(dict(row, reason="locus codimension"))
            if st.dim + r > top:
                report.failures.append(dict(row, reason="preimage dimension"))
            if st.dim + r == top:
                report.top_attained = True
            if r >= 1 and st.dim + r > top - r:
                report.literal_violations.append(row)
    return report
