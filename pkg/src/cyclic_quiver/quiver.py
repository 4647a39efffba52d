"""Raiz calculus for the cyclic quiver with ``n`` vertices.

A raiz is an interval ``(p, q)`` of integers, ``p <= q``, taken up to a
simultaneous shift by ``n``; it is the isomorphism class of the indecomposable
nilpotent representation with basis ``e_p -> e_{p+1} -> ... -> e_q -> 0``.
Stored raiz are normalized so that ``0 <= q <= n - 1``.

Kostant partitions are multisets of raiz, stored as tuples sorted in the
canonical order (ends_at ascending, length descending, begins_at ascending).
Dimension vectors are plain integer tuples of length ``n``.
"""

from __future__ import annotations

import math
from collections import Counter
from functools import lru_cache
from itertools import combinations_with_replacement
from operator import itemgetter
from typing import Iterable, NamedTuple

DimensionVector = tuple  # tuple[int, ...] of length n


class CompositionError(ValueError):
    """Raised when a smile/frown of two raiz is undefined."""


def check_rank(n: int) -> int:
    if not isinstance(n, int) or n < 2:
        raise ValueError(f"the cyclic quiver needs n >= 2, got {n!r}")
    return n


class Raiz(NamedTuple):
    p: int
    q: int

    @property
    def is_unit(self) -> bool:
        return self.q < self.p

    @property
    def length(self) -> int:
        return max(self.q - self.p + 1, 0)

    def begins_at(self, n: int) -> int:
        return self.p % n

    def ends_at(self, n: int) -> int:
        return self.q % n

    def __str__(self) -> str:
        return "unit" if self.is_unit else f"{self.p}..{self.q}"


# x_unit = 1 and d/dx_unit = 0; unit smile theta = theta smile unit = theta.
UNIT = Raiz(0, -1)


def raiz(p: int, q: int, n: int) -> Raiz:
    """Canonical representative of the interval ``(p, q)`` modulo ``n``."""
    if q < p:
        raise ValueError(f"empty interval ({p}, {q}); use UNIT for the unit raiz")
    shift = (q // n) * n
    return Raiz(p - shift, q - shift)


def simple(i: int, n: int) -> Raiz:
    return Raiz(i % n, i % n)


def parse_raiz(text: str, n: int) -> Raiz:
    if text.strip() == "unit":
        return UNIT
    p, q = text.split("..")
    return raiz(int(p), int(q), n)


# canonical order key (q, p): ends_at asc, then length desc.  A C-level getter
# because every monomial product sorts with it.
raiz_key = itemgetter(1, 0)


# ---------------------------------------------------------------------------
# dimension vectors


def zero_vector(n: int) -> DimensionVector:
    return (0,) * n


def simple_vector(i: int, n: int) -> DimensionVector:
    v = [0] * n
    v[i % n] = 1
    return tuple(v)


def add_vectors(a: DimensionVector, b: DimensionVector) -> DimensionVector:
    return tuple(x + y for x, y in zip(a, b))


def sub_vectors(a: DimensionVector, b: DimensionVector) -> DimensionVector:
    return tuple(x - y for x, y in zip(a, b))


def scale_vector(k: int, a: DimensionVector) -> DimensionVector:
    return tuple(k * x for x in a)


def is_nonnegative(a: DimensionVector) -> bool:
    return all(x >= 0 for x in a)


def size(a: DimensionVector) -> int:
    """``|a|``, the sum of the coordinates."""
    return sum(a)


def cartan_pairing(i: int, a: DimensionVector) -> int:
    """``<i', a> = 2 a_i - a_{i-1} - a_{i+1}`` with indices mod n."""
    n = len(a)
    return 2 * a[i % n] - a[(i - 1) % n] - a[(i + 1) % n]


def cartan_matrix(n: int) -> list[list[int]]:
    return [[cartan_pairing(i, simple_vector(j, n)) for j in range(n)] for i in range(n)]


def delta_vector(n: int, p: int = 1) -> DimensionVector:
    """``p * alpha_n``, the vector with every coordinate equal to ``p``."""
    return (p,) * n


@lru_cache(maxsize=None)
def dim_raiz(theta: Raiz, n: int) -> DimensionVector:
    if theta.is_unit:
        return zero_vector(n)
    full, rest = divmod(theta.length, n)
    v = [full] * n
    start = theta.p % n
    for k in range(rest):
        v[(start + k) % n] += 1
    return tuple(v)


# ---------------------------------------------------------------------------
# smile / frown and the sets B_i, E_i


def in_B(theta: Raiz, i: int, n: int) -> bool:
    return theta.is_unit or theta.p % n == i % n


def in_E(theta: Raiz, i: int, n: int) -> bool:
    return theta.is_unit or theta.q % n == i % n


def can_smile(lower: Raiz, upper: Raiz, n: int) -> bool:
    return lower.is_unit or upper.is_unit or (lower.q + 1 - upper.p) % n == 0


def smile(lower: Raiz, upper: Raiz, n: int) -> Raiz:
    """The extension ``eta`` of ``lower`` by ``upper``: 0 -> upper -> eta -> lower -> 0.

    ``lower`` occupies the lower indices of the concatenated interval.
    """
    if lower.is_unit:
        return upper
    if upper.is_unit:
        return lower
    if (lower.q + 1 - upper.p) % n:
        raise CompositionError(f"{lower} does not end just before {upper} begins (n={n})")
    return raiz(lower.p, lower.q + upper.length, n)


def try_smile(lower: Raiz, upper: Raiz, n: int) -> Raiz | None:
    return smile(lower, upper, n) if can_smile(lower, upper, n) else None


def is_terminal_segment(theta: Raiz, eta: Raiz, n: int) -> bool:
    if theta.is_unit:
        return True
    if eta.is_unit:
        return False
    return (eta.q - theta.q) % n == 0 and theta.length <= eta.length


def frown(eta: Raiz, theta: Raiz, n: int) -> Raiz:
    """The raiz ``vartheta`` with ``eta = vartheta smile theta``."""
    if theta.is_unit:
        return eta
    if not is_terminal_segment(theta, eta, n):
        raise CompositionError(f"{theta} is not a terminal segment of {eta} (n={n})")
    if theta.length == eta.length:
        return UNIT
    return raiz(eta.p, eta.q - theta.length, n)


# ---------------------------------------------------------------------------
# Kostant partitions


class KostantPartition(tuple):
    """A multiset of non-unit raiz, kept sorted in the canonical order."""

    __slots__ = ()

    def __new__(cls, parts: Iterable[Raiz] = ()):
        return tuple.__new__(cls, sorted((p for p in parts if not p.is_unit), key=raiz_key))

    def multiplicity(self, theta: Raiz) -> int:
        return self.count(theta)

    @property
    def num_parts(self) -> int:
        """``K(A)``, the number of parts counted with multiplicity."""
        return len(self)

    def dim(self, n: int) -> DimensionVector:
        v = zero_vector(n)
        for theta in self:
            v = add_vectors(v, dim_raiz(theta, n))
        return v

    def distinct(self) -> list[Raiz]:
        return list(dict.fromkeys(self))

    def replace(self, old: Raiz, new: Raiz) -> "KostantPartition":
        """Replace one copy of ``old`` by ``new`` (dropping ``new`` if it is the unit)."""
        parts = list(self)
        parts.remove(old)
        parts.append(new)
        return KostantPartition(parts)

    def add(self, *extra: Raiz) -> "KostantPartition":
        return KostantPartition(self + extra)

    def remove(self, theta: Raiz) -> "KostantPartition":
        parts = list(self)
        parts.remove(theta)
        return tuple.__new__(KostantPartition, parts)

    def sort_key(self) -> tuple:
        return tuple(raiz_key(t) for t in self)

    def __repr__(self) -> str:
        return "{" + ", ".join(f"({t.p},{t.q})" for t in self) + "}"


EMPTY = KostantPartition()


def kostant_from_pairs(pairs: Iterable[tuple[int, int]], n: int) -> KostantPartition:
    return KostantPartition(raiz(p, q, n) for p, q in pairs)


@lru_cache(maxsize=None)
def raiz_below(alpha: DimensionVector) -> tuple[Raiz, ...]:
    """All raiz with ``dim <= alpha``, in the canonical order."""
    n = len(alpha)
    found = []
    for q in range(n):
        for length in range(1, size(alpha) + 1):
            theta = Raiz(q - length + 1, q)
            d = dim_raiz(theta, n)
            if all(x <= y for x, y in zip(d, alpha)):
                found.append(theta)
    return tuple(sorted(found, key=raiz_key))


@lru_cache(maxsize=None)
def enumerate_kostant(alpha: DimensionVector) -> tuple[KostantPartition, ...]:
    """All Kostant partitions of ``alpha`` in the canonical deterministic order."""
    return kostant_partitions(alpha)


def kostant_partitions(alpha: DimensionVector) -> tuple[KostantPartition, ...]:
    """Uncached ``enumerate_kostant``, for one-shot sweeps over large pieces."""
    alpha = tuple(alpha)
    check_rank(len(alpha))
    if not is_nonnegative(alpha):
        raise ValueError(f"dimension vector must be nonnegative, got {alpha}")
    n = len(alpha)
    candidates = raiz_below(alpha)
    # sparse supports make the fit test cheap
    supports = [[(j, c) for j, c in enumerate(dim_raiz(t, n)) if c] for t in candidates]
    out: list[tuple[Raiz, ...]] = []
    rest = list(alpha)

    def rec(start: int, remaining: int, acc: list[Raiz]) -> None:
        if not remaining:
            out.append(tuple(acc))
            return
        for k in range(start, len(candidates)):
            sup = supports[k]
            if all(rest[j] >= c for j, c in sup):
                for j, c in sup:
                    rest[j] -= c
                acc.append(candidates[k])
                rec(k, remaining - candidates[k].length, acc)
                acc.pop()
                for j, c in sup:
                    rest[j] += c

    rec(0, sum(alpha), [])
    parts = [tuple.__new__(KostantPartition, p) for p in out]
    return tuple(sorted(parts, key=KostantPartition.sort_key))


def vectors_up_to(n: int, max_size: int) -> list[DimensionVector]:
    """Every nonnegative ``alpha`` with ``|alpha| <= max_size``, by size then lexicographically."""
    out = []
    for total in range(max_size + 1):
        for combo in combinations_with_replacement(range(n), total):
            out.append(tuple(combo.count(i) for i in range(n)))
    return sorted(out, key=lambda a: (size(a), tuple(-x for x in a)))


def vectors_below(bound: DimensionVector) -> list[DimensionVector]:
    """Every ``alpha`` with ``0 <= alpha <= bound`` componentwise."""
    out = [()]
    for b in bound:
        out = [v + (x,) for v in out for x in range(b + 1)]
    return sorted(out, key=lambda a: (size(a), tuple(-x for x in a)))


# ---------------------------------------------------------------------------
# multipartitions


class Multipartition(tuple):
    """A multiset of nonempty Kostant partitions (the local types at distinct points)."""

    __slots__ = ()

    def __new__(cls, groups: Iterable[KostantPartition] = ()):
        groups = [KostantPartition(g) for g in groups]
        if any(not g for g in groups):
            raise ValueError("multipartition groups must be nonempty")
        return tuple.__new__(cls, sorted(groups, key=_group_key))

    def dim(self, n: int) -> DimensionVector:
        v = zero_vector(n)
        for g in self:
            v = add_vectors(v, g.dim(n))
        return v

    def underlying(self, n: int) -> tuple[DimensionVector, ...]:
        """The usual partition ``|mu|``: the multiset of group dimensions."""
        return tuple(sorted(g.dim(n) for g in self))

    @property
    def is_simple(self) -> bool:
        return all(len(g) == 1 for g in self)

    def __repr__(self) -> str:
        return "<" + ", ".join(repr(g) for g in self) + ">"


def _group_key(g: KostantPartition) -> tuple:
    return (len(g), g.sort_key())


@lru_cache(maxsize=None)
def enumerate_multipartitions(alpha: DimensionVector) -> tuple[Multipartition, ...]:
    alpha = tuple(alpha)
    check_rank(len(alpha))
    groups: list[tuple[KostantPartition, DimensionVector]] = []
    for gamma in vectors_below(alpha):
        if any(gamma):
            groups.extend((kappa, gamma) for kappa in enumerate_kostant(gamma))
    out: list[Multipartition] = []

    def rec(start: int, rest: DimensionVector, acc: list[KostantPartition]) -> None:
        if not any(rest):
            out.append(Multipartition(acc))
            return
        for k in range(start, len(groups)):
            kappa, gamma = groups[k]
            if all(x <= y for x, y in zip(gamma, rest)):
                acc.append(kappa)
                rec(k, sub_vectors(rest, gamma), acc)
                acc.pop()

    rec(0, alpha, [])
    return tuple(sorted(out, key=lambda mu: tuple(_group_key(g) for g in mu)))


def covering_degree(mu: Multipartition, n: int) -> int:
    """``|S_Gamma| / |S_mu|``, the degree of the covering of the diagonal stratum."""
    by_dim = Counter(g.dim(n) for g in mu)
    by_group = Counter(mu)
    num = math.prod(math.factorial(k) for k in by_dim.values())
    den = math.prod(math.factorial(k) for k in by_group.values())
    return num // den


# ---------------------------------------------------------------------------
# coordinates relative to R^+_s


def renormalize(theta: Raiz, s: int, n: int) -> tuple[int, int]:
    """The shift of ``theta`` whose endpoint lies in ``[s, s + n - 1]``."""
    shift = ((theta.q - s) // n) * n
    return theta.p - shift, theta.q - shift


def kappa_coords(kappa: KostantPartition, s: int, n: int) -> dict[tuple[int, int], int]:
    """Coordinates ``kappa_p^q`` of ``kappa`` with respect to ``R^+_s``."""
    coords: dict[tuple[int, int], int] = {}
    for theta in kappa:
        key = renormalize(theta, s, n)
        coords[key] = coords.get(key, 0) + 1
    return dict(sorted(coords.items()))


def kappa_cumulative(coords: dict[tuple[int, int], int], p: int, q: int) -> int:
    """``kappa_{<=p}^{>=q}``."""
    return sum(m for (a, b), m in coords.items() if a <= p and b >= q)


def from_coords(coords: dict[tuple[int, int], int], n: int) -> KostantPartition:
    parts = []
    for (p, q), m in coords.items():
        parts.extend([raiz(p, q, n)] * m)
    return KostantPartition(parts)


# ---------------------------------------------------------------------------
# serialization


def raiz_to_str(theta: Raiz) -> str:
    return str(theta)


def partition_to_json(kappa: KostantPartition) -> list[str]:
    return [str(t) for t in kappa]


def partition_from_json(items: Iterable[str], n: int) -> KostantPartition:
    return KostantPartition(parse_raiz(s, n) for s in items)
