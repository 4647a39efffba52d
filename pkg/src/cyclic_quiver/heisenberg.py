"""Extension from affine sl_n to affine gl_n: the folding map, P_n, and a_p."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .operators import ChevalleyFamily, Etilde, ModuleParams
from .polynomial import (
    Diagonal,
    LinOp,
    Multiplication,
    Polynomial,
    SumOp,
)
from .quiver import (
    EMPTY,
    KostantPartition,
    Raiz,
    check_rank,
    delta_vector,
    dim_raiz,
    enumerate_kostant,
    raiz,
    raiz_key,
)


@dataclass(frozen=True)
class RankPair:
    """Folding from rank ``k n`` down to rank ``n``."""

    n: int
    k: int

    def __post_init__(self):
        check_rank(self.n)
        if self.k < 2:
            raise ValueError(f"k must be >= 2, got {self.k}")

    @property
    def big(self) -> int:
        return self.n * self.k

    def orbit(self, i: int) -> list[int]:
        """``tau_a(i)`` for ``a`` in ``nZ / knZ``."""
        return [(i % self.n) + a * self.n for a in range(self.k)]

    def induced_params(self, params: ModuleParams) -> ModuleParams:
        """Rank-kn constants ``c_j = c_{j mod n} / k``."""
        if params.n != self.n:
            raise ValueError("parameter rank does not match the pair")
        return ModuleParams(self.big, tuple(Fraction(params.ci(j), self.k) for j in range(self.big)))


@lru_cache(maxsize=None)
def zeta_raiz(theta: Raiz, n: int) -> Raiz:
    """``(p, q) mod kn -> (p, q) mod n``."""
    if theta.is_unit:
        return theta
    return raiz(theta.p, theta.q, n)


def zeta_monomial(mono, n: int) -> KostantPartition:
    return tuple.__new__(KostantPartition, sorted((zeta_raiz(t, n) for t in mono), key=raiz_key))


def zeta_terms(terms: dict, n: int) -> dict:
    acc: dict = {}
    for mono, c in terms.items():
        key = zeta_monomial(mono, n)
        v = acc.get(key, 0) + c
        if v:
            acc[key] = v
        else:
            acc.pop(key, None)
    return acc


def zeta(poly: Polynomial, n: int) -> Polynomial:
    """The algebra map ``x_v -> x_{zeta(v)}`` from rank ``kn`` variables to rank ``n``."""
    return Polynomial._raw(zeta_terms(poly.terms, n))


@lru_cache(maxsize=None)
def poly_P(n: int) -> Polynomial:
    """``P_n = sum over FK(alpha_n) of (-1)^(K(kappa)+1) x^kappa``."""
    check_rank(n)
    return Polynomial._raw({kappa: (-1) ** (len(kappa) + 1) for kappa in enumerate_kostant(delta_vector(n))})


def raiz_of_dimension(n: int, p: int) -> list[Raiz]:
    """The ``n`` raiz of dimension ``p * alpha_n``, one ending at each residue."""
    return [Raiz(q - p * n + 1, q) for q in range(n)]


def preimages(theta: Raiz, pair: RankPair) -> list[Raiz]:
    """``zeta^{-1}(theta)`` among rank-kn raiz."""
    return [raiz(theta.p + a * pair.n, theta.q + a * pair.n, pair.big) for a in range(pair.k)]


def mu_lift(kind: str, target, pair: RankPair, params: ModuleParams) -> LinOp:
    """Orbit-summed rank-kn operator for ``e``, ``h``, ``f`` (target = i) or ``Etilde`` (target = theta)."""
    if kind == "Etilde":
        return SumOp([(1, Etilde(v, pair.big)) for v in preimages(target, pair)], homogeneous=False)
    big = ChevalleyFamily(pair.induced_params(params))
    return SumOp([(1, big(kind, j)) for j in pair.orbit(target)], homogeneous=False)


def heis_a(p: int, params: ModuleParams) -> LinOp:
    """Heisenberg operator ``a_p``."""
    n = params.n
    if p > 0:
        return SumOp([(1, Etilde(theta, n)) for theta in raiz_of_dimension(n, p)])
    if p < 0:
        P = zeta(poly_P(-p * n), n) * params.c0
        return Multiplication(P, n) if P else SumOp([])
    return heis_a0(params)


def heis_a0(params: ModuleParams) -> LinOp:
    c0 = params.c0
    return Diagonal(lambda m: c0, params.n, "a_0")


def central_c(params: ModuleParams) -> Fraction:
    """``c = n c_0``, the Heisenberg central charge."""
    return params.n * params.c0


def unit_coefficient(poly: Polynomial):
    return poly.terms.get(EMPTY, 0)


__all__ = [
    "RankPair",
    "zeta",
    "zeta_raiz",
    "zeta_monomial",
    "poly_P",
    "mu_lift",
    "heis_a",
    "heis_a0",
    "raiz_of_dimension",
    "preimages",
    "central_c",
    "dim_raiz",
]
