"""Nilpotent representations of the cyclic quiver and recovery of their Kostant partition from ranks."""

from __future__ import annotations

import random
from dataclasses import dataclass

from sympy import Matrix, eye

from .quiver import (
    DimensionVector,
    KostantPartition,
    Raiz,
    add_vectors,
    check_rank,
    dim_raiz,
    from_coords,
    raiz,
    size,
)


def zeros(rows: int, cols: int) -> Matrix:
    return Matrix.zeros(rows, cols)


def rank(m: Matrix) -> int:
    """Exact rank; sympy works over the integers here, so there is no rounding."""
    return 0 if 0 in m.shape else m.rank()


@dataclass
class NilpotentRep:
    """Graded spaces ``V_j`` with arrows ``V_j -> V_{j+1}``; ``arrows[j]`` is ``dims[j+1] x dims[j]``."""

    dims: DimensionVector
    arrows: list

    def __post_init__(self):
        n = check_rank(len(self.dims))
        self.dims = tuple(self.dims)
        if len(self.arrows) != n:
            raise ValueError("need one arrow per vertex")
        fixed = []
        for j, a in enumerate(self.arrows):
            rows, cols = self.dims[(j + 1) % n], self.dims[j]
            a = a if isinstance(a, Matrix) else (Matrix(a) if rows and cols else zeros(rows, cols))
            if a.shape != (rows, cols):
                raise ValueError(f"arrow {j} has shape {a.shape}, expected {(rows, cols)}")
            fixed.append(a)
        self.arrows = fixed

    @property
    def n(self) -> int:
        return len(self.dims)

    def path(self, p: int, q: int) -> Matrix:
        """Composite of the arrows from position ``p`` to position ``q >= p``."""
        m = eye(self.dims[p % self.n])
        for t in range(p, q):
            m = self.arrows[t % self.n] * m
        return m

    def is_nilpotent(self) -> bool:
        total = size(self.dims)
        return all(rank(self.path(j, j + total)) == 0 for j in range(self.n) if self.dims[j])


def direct_sum(reps: list[NilpotentRep]) -> NilpotentRep:
    n = reps[0].n
    dims = tuple([0] * n)
    for r in reps:
        dims = add_vectors(dims, r.dims)
    arrows = []
    for j in range(n):
        a = zeros(dims[(j + 1) % n], dims[j])
        ro = co = 0
        for r in reps:
            blk = r.arrows[j]
            a[ro:ro + blk.rows, co:co + blk.cols] = blk
            ro += blk.rows
            co += blk.cols
        arrows.append(a)
    return NilpotentRep(dims, arrows)


def indecomposable(theta: Raiz, n: int) -> NilpotentRep:
    """``M_theta``: a chain ``e_p -> e_{p+1} -> ... -> e_q -> 0``."""
    dims = dim_raiz(theta, n)
    index = {}
    seen = [0] * n
    for t in range(theta.p, theta.q + 1):
        index[t] = seen[t % n]
        seen[t % n] += 1
    arrows = [zeros(dims[(j + 1) % n], dims[j]) for j in range(n)]
    for t in range(theta.p, theta.q):
        j = t % n
        arrows[j][index[t + 1], index[t]] = 1
    return NilpotentRep(dims, arrows)


def rep_of_partition(kappa: KostantPartition, n: int) -> NilpotentRep:
    parts = [indecomposable(t, n) for t in kappa]
    if not parts:
        return NilpotentRep(tuple([0] * n), [zeros(0, 0) for _ in range(n)])
    return direct_sum(parts)


def random_unimodular(k: int, rng: random.Random, steps: int = 12) -> tuple[Matrix, Matrix]:
    """A random integer matrix of determinant +-1 and its inverse, from elementary row operations."""
    g = eye(k)
    if k == 0:
        return g, g
    for _ in range(steps):
        if k == 1 or rng.random() < 0.2:
            r = rng.randrange(k)
            g[r, :] = -g[r, :]
            continue
        r, c = rng.sample(range(k), 2)
        g[r, :] = g[r, :] + rng.choice([-2, -1, 1, 2]) * g[c, :]
    return g, g.inv()


def conjugate(rep: NilpotentRep, rng: random.Random) -> NilpotentRep:
    """Random graded change of basis ``A_j -> g_{j+1} A_j g_j^{-1}``."""
    n = rep.n
    gs = [random_unimodular(k, rng) for k in rep.dims]
    arrows = [gs[(j + 1) % n][0] * rep.arrows[j] * gs[j][1] for j in range(n)]
    return NilpotentRep(rep.dims, arrows)


def random_partition(n: int, max_size: int, rng: random.Random) -> KostantPartition:
    target = rng.randint(1, max_size)
    parts, used = [], 0
    while used < target:
        length = rng.randint(1, target - used)
        p = rng.randrange(n)
        parts.append(raiz(p, p + length - 1, n))
        used += length
    return KostantPartition(parts)


def partition_from_rep(rep: NilpotentRep, s: int = 0) -> KostantPartition:
    """Recover the Kostant partition from ranks of composites.

    ``K(p, q) = rank C(p, q) - rank C(p, s + n)`` counts parts with ``p' <= p``
    and ``q' >= q`` in coordinates ``s <= q' <= s + n - 1``; second differences
    give the multiplicities.
    """
    n = rep.n
    total = size(rep.dims)
    if not rep.is_nilpotent():
        raise ValueError("representation is not nilpotent")
    cache: dict = {}

    def K(p: int, q: int) -> int:
        if q >= s + n or p < q - total:
            return 0
        if (p, q) not in cache:
            cache[(p, q)] = rank(rep.path(p, q)) - rank(rep.path(p, s + n))
        return cache[(p, q)]

    coords = {}
    for q in range(s, s + n):
        for p in range(q - total, q + 1):
            m = K(p, q) - K(p - 1, q) - K(p, q + 1) + K(p - 1, q + 1)
            if m < 0:
                raise ArithmeticError("negative multiplicity in rank recovery")
            if m:
                coords[(p, q)] = m
    return from_coords(coords, n)
