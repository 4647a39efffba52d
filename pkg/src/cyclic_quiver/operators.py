"""First-order differential operators realizing the Chevalley generators.

The dual module ``N = Q[x_theta]`` carries the transposes ``e_i^T, h_i^T,
f_i^T`` of the geometric operators.  In terms of the building blocks

    E(theta)  = sum_{v in E_{i-1}} x_{v smile theta} d/dx_v
    Et(theta) = sum_{v in E_{i-1}} x_v d/dx_{v smile theta}     (theta begins at i)
    B(theta)  = sum_{v in B_{i+1}} x_{theta smile v} d/dx_v     (theta ends at i)
    EE_i = sum_{E_{i-1}} x d/dx,  BB_i = sum_{B_{i+1}} x d/dx,
    Delta_i = BB_{i-1} - BB_i + c_i

they read ``e_i^T = Et(i)``, ``h_i^T = EE_{i+1} - EE_i + Delta_i`` and
``f_i^T = B(i) - E(i) + x_i Delta_i``.  A symbol whose raiz is undefined
(for instance ``Et(theta1 smile theta2)`` with incompatible residues) is the
zero operator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .polynomial import (
    ZERO,
    Derivative,
    Diagonal,
    LinOp,
    SumOp,
    VariableOp,
    Compose,
    PieceMatrix,
    replace_part,
)
from .quiver import (
    DimensionVector,
    KostantPartition,
    Raiz,
    add_vectors,
    cartan_pairing,
    check_rank,
    dim_raiz,
    enumerate_kostant,
    frown,
    raiz,
    scale_vector,
    simple,
    simple_vector,
    smile,
    UNIT,
)


def as_rational(value) -> int | Fraction:
    """Exact rational from an int, Fraction or ``"p/q"`` string; integral values come back as int."""
    if isinstance(value, float):
        raise TypeError(f"refusing inexact float {value!r}; pass an int, Fraction or string")
    if isinstance(value, str):
        value = value.strip().replace("\u2212", "-")
    q = Fraction(value)
    # int arithmetic is several times faster than Fraction in the hot loops
    return q.numerator if q.denominator == 1 else q


@dataclass(frozen=True)
class ModuleParams:
    """Rank ``n`` and the lowest weight ``(c_0, ..., c_{n-1})``."""

    n: int
    c: tuple[Fraction, ...]

    def __post_init__(self):
        check_rank(self.n)
        if len(self.c) != self.n:
            raise ValueError(f"need {self.n} constants c_i, got {len(self.c)}")
        object.__setattr__(self, "c", tuple(as_rational(x) for x in self.c))

    @classmethod
    def from_geometry(cls, n: int, genus: int, d: int, degL=None) -> "ModuleParams":
        """``c_i = (2 - 2g) + deg L_{i+1} - deg L_i`` with ``deg L_{p+n} = deg L_p + d``."""
        degL = [0] * n if degL is None else list(degL)
        if len(degL) != n:
            raise ValueError(f"degL needs {n} entries, got {len(degL)}")
        ext = degL + [degL[0] + d]
        return cls(n, tuple(2 - 2 * genus + ext[i + 1] - ext[i] for i in range(n)))

    @property
    def c0(self) -> int | Fraction:
        return as_rational(sum(self.c))

    def ci(self, i: int) -> Fraction:
        return self.c[i % self.n]

    def to_json(self) -> dict:
        return {"n": self.n, "c": [str(x) for x in self.c], "c0": str(self.c0)}


def geometric_charge(n: int, genus: int, d: int) -> int:
    return (2 - 2 * genus) * n + d


# ---------------------------------------------------------------------------
# building blocks


class Etilde(LinOp):
    """``Et(theta)``: replace a part ``eta = v smile theta`` by ``v``."""

    def __init__(self, theta: Raiz, n: int):
        if theta.is_unit:
            raise ValueError("Et(theta) needs a non-unit raiz")
        self.theta = theta
        self.n = n
        self.shift = scale_vector(-1, dim_raiz(theta, n))

    def act(self, mono):
        n, tq = self.n, self.theta.q
        tl = self.theta.q - self.theta.p + 1
        out = {}
        last = None
        for eta in mono:
            if eta == last:
                continue
            last = eta
            # inline is_terminal_segment / frown: this is the hottest loop
            if (eta.q - tq) % n == 0 and eta.q - eta.p + 1 >= tl:
                rest = UNIT if eta.q - eta.p + 1 == tl else raiz(eta.p, eta.q - tl, n)
                out[replace_part(mono, eta, rest)] = mono.count(eta)
        return out


class Eop(LinOp):
    """``E(theta)``: replace a part ``v`` ending at ``begin(theta) - 1`` by ``v smile theta``."""

    def __init__(self, theta: Raiz, n: int):
        if theta.is_unit:
            raise ValueError("E(theta) needs a non-unit raiz")
        self.theta = theta
        self.n = n
        self.shift = dim_raiz(theta, n)

    def act(self, mono):
        theta, n = self.theta, self.n
        end = (theta.p - 1) % n
        out = {}
        last = None
        for v in mono:
            if v == last:
                continue
            last = v
            if v.q % n == end:
                out[replace_part(mono, v, smile(v, theta, n))] = mono.count(v)
        return out


class Bop(LinOp):
    """``B(theta)``: replace a part ``v`` beginning at ``end(theta) + 1`` by ``theta smile v``."""

    def __init__(self, theta: Raiz, n: int):
        if theta.is_unit:
            raise ValueError("B(theta) needs a non-unit raiz")
        self.theta = theta
        self.n = n
        self.shift = dim_raiz(theta, n)

    def act(self, mono):
        theta, n = self.theta, self.n
        start = (theta.q + 1) % n
        out = {}
        last = None
        for v in mono:
            if v == last:
                continue
            last = v
            if v.p % n == start:
                out[replace_part(mono, v, smile(theta, v, n))] = mono.count(v)
        return out


def count_beginning(mono, i: int, n: int) -> int:
    i %= n
    return sum(1 for t in mono if t.p % n == i)


def count_ending(mono, i: int, n: int) -> int:
    i %= n
    return sum(1 for t in mono if t.q % n == i)


def gen(kind: str, theta: Raiz, n: int) -> LinOp:
    """``E``, ``Etilde`` or ``B`` of ``theta``; ``None``/unit arguments give zero."""
    if theta is None:
        return ZERO
    if kind == "E":
        return Eop(theta, n)
    if kind in ("Etilde", "Et"):
        return Etilde(theta, n)
    if kind == "B":
        return Bop(theta, n)
    raise ValueError(f"unknown generator kind {kind!r}")


def gen_Bsum(i: int, n: int) -> LinOp:
    """``BB_i``: number operator for parts beginning at ``i + 1``."""
    return Diagonal(lambda m: count_beginning(m, i + 1, n), n, f"BB_{i % n}")


def gen_Esum(i: int, n: int) -> LinOp:
    """``EE_i``: number operator for parts ending at ``i - 1``."""
    return Diagonal(lambda m: count_ending(m, i - 1, n), n, f"EE_{i % n}")


def gen_scalar(value, n: int) -> LinOp:
    return Diagonal(lambda m: value, n, str(value))


def gen_Delta(i: int, params: ModuleParams) -> LinOp:
    n = params.n
    ci = params.ci(i)
    return Diagonal(
        lambda m: count_beginning(m, i, n) - count_beginning(m, i + 1, n) + ci,
        n,
        f"Delta_{i % n}",
    )


def x(theta: Raiz, n: int) -> LinOp:
    if theta is None:
        return ZERO
    return VariableOp(theta, n)


def d(theta: Raiz, n: int) -> LinOp:
    return Derivative(theta, n)


# ---------------------------------------------------------------------------
# Chevalley generators


def chevalley(kind: str, i: int, params: ModuleParams) -> LinOp:
    """``e``, ``h``, ``f`` (the transposes e_i^T, h_i^T, f_i^T) or ``f'`` = f_i^T - c_i x_i."""
    n = params.n
    s = simple(i, n)
    if kind == "e":
        return Etilde(s, n)
    if kind == "h":
        return SumOp([(1, gen_Esum(i + 1, n)), (-1, gen_Esum(i, n)), (1, gen_Delta(i, params))])
    if kind == "f":
        return SumOp([(1, Bop(s, n)), (-1, Eop(s, n)), (1, Compose(VariableOp(s, n), gen_Delta(i, params)))])
    if kind in ("f'", "fprime"):
        zero_c = ModuleParams(n, tuple(0 for _ in range(n)))
        return SumOp([(1, Bop(s, n)), (-1, Eop(s, n)), (1, Compose(VariableOp(s, n), gen_Delta(i, zero_c)))])
    raise ValueError(f"unknown Chevalley kind {kind!r}")


class ChevalleyFamily:
    """Lazily built and shared generators for one parameter set."""

    def __init__(self, params: ModuleParams):
        self.params = params
        self.n = params.n
        self._ops: dict[tuple[str, int], LinOp] = {}

    def __call__(self, kind: str, i: int) -> LinOp:
        key = (kind, i % self.n)
        op = self._ops.get(key)
        if op is None:
            op = self._ops[key] = chevalley(kind, i % self.n, self.params)
        return op

    def clear_cache(self) -> None:
        for op in self._ops.values():
            op.clear_cache()


# ---------------------------------------------------------------------------
# geometric matrix coefficients


def _check_dims(A, A_prime, i: int, n: int) -> None:
    if add_vectors(KostantPartition(A).dim(n), simple_vector(i, n)) != KostantPartition(A_prime).dim(n):
        raise ValueError(f"|A'| must equal |A| + {i % n}: got {A!r} and {A_prime!r}")


def eps_coeff(A, A_prime, i: int, n: int) -> int:
    """Matrix coefficient of ``e_i`` from ``v_A`` to ``v_{A'}``."""
    A = KostantPartition(A)
    A_prime = KostantPartition(A_prime)
    _check_dims(A, A_prime, i, n)
    s = simple(i, n)
    for theta in A_prime.distinct():
        if theta.q % n == i % n and A_prime.replace(theta, frown(theta, s, n)) == A:
            return A_prime.count(theta)
    return 0


def M_coeff(i: int, A, params: ModuleParams) -> Fraction:
    """``M(i, A) = c_i + sum_{theta in B_{i+1}} (m(i smile theta, A) - m(theta, A))``."""
    n = params.n
    A = KostantPartition(A)
    s = simple(i, n)
    relevant = {UNIT}
    for eta in A:
        if eta.p % n == (i + 1) % n:
            relevant.add(eta)
        if eta.p % n == i % n:
            relevant.add(UNIT if eta.length == 1 else raiz(eta.p + 1, eta.q, n))
    total = params.ci(i)
    for theta in relevant:
        total += A.count(smile(s, theta, n)) - (0 if theta.is_unit else A.count(theta))
    return total


def phi_coeff(A_prime, A, i: int, params: ModuleParams) -> Fraction:
    """Matrix coefficient of ``f_i`` from ``v_{A'}`` to ``v_A``."""
    n = params.n
    A = KostantPartition(A)
    A_prime = KostantPartition(A_prime)
    _check_dims(A, A_prime, i, n)
    s = simple(i, n)
    total = Fraction(0)
    if A.add(s) == A_prime:
        total += M_coeff(i, A, params)
    for theta in A.distinct():
        if theta.q % n == (i - 1) % n and A.replace(theta, smile(theta, s, n)) == A_prime:
            total -= A.count(theta)
        if theta.p % n == (i + 1) % n and A.replace(theta, smile(s, theta, n)) == A_prime:
            total += A.count(theta)
    return total


def eps_matrix(alpha: DimensionVector, i: int, n: int) -> PieceMatrix:
    """Matrix of the geometric ``e_i`` from piece ``alpha`` to ``alpha + i``."""
    alpha = tuple(alpha)
    target = add_vectors(alpha, simple_vector(i, n))
    src = enumerate_kostant(alpha)
    tgt = enumerate_kostant(target)
    entries = {}
    for c, A in enumerate(src):
        for r, Ap in enumerate(tgt):
            v = eps_coeff(A, Ap, i, n)
            if v:
                entries[(r, c)] = v
    return PieceMatrix(alpha, target, src, tgt, entries)


def phi_matrix(alpha: DimensionVector, i: int, params: ModuleParams) -> PieceMatrix:
    """Matrix of the geometric ``f_i`` from piece ``alpha + i`` to ``alpha``."""
    n = params.n
    alpha = tuple(alpha)
    source = add_vectors(alpha, simple_vector(i, n))
    src = enumerate_kostant(source)
    tgt = enumerate_kostant(alpha)
    entries = {}
    for c, Ap in enumerate(src):
        for r, A in enumerate(tgt):
            v = phi_coeff(Ap, A, i, params)
            if v:
                entries[(r, c)] = v
    return PieceMatrix(source, alpha, src, tgt, entries)


def h_eigenvalue(i: int, alpha: DimensionVector, params: ModuleParams) -> Fraction:
    """``c_i + <i', alpha>``, the scalar by which h_i acts on the piece of ``alpha``."""
    return params.ci(i) + cartan_pairing(i, alpha)


__all__ = [
    "ModuleParams",
    "ChevalleyFamily",
    "Etilde",
    "Eop",
    "Bop",
    "chevalley",
    "gen",
    "gen_Bsum",
    "gen_Esum",
    "gen_Delta",
    "gen_scalar",
    "x",
    "d",
    "eps_coeff",
    "phi_coeff",
    "M_coeff",
    "eps_matrix",
    "phi_matrix",
    "h_eigenvalue",
    "geometric_charge",
]
