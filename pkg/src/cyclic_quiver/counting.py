"""Weight-space dimensions from the Euler product, independent of partition enumeration."""

from __future__ import annotations

from .quiver import DimensionVector, Raiz, check_rank, dim_raiz, size, vectors_up_to


def raiz_up_to(n: int, max_size: int) -> list[Raiz]:
    """Every raiz with ``|dim| <= max_size``: ``n`` per length."""
    return [Raiz(q - length + 1, q) for length in range(1, max_size + 1) for q in range(n)]


def kostant_series(n: int, max_size: int) -> dict[DimensionVector, int]:
    """Coefficients of ``prod_theta 1 / (1 - z^dim(theta))`` truncated at total degree ``max_size``."""
    check_rank(n)
    series = {v: 0 for v in vectors_up_to(n, max_size)}
    series[tuple([0] * n)] = 1
    # multiplying by 1/(1 - z^d) is the in-place recurrence a[v] += a[v - d], lowest degree first
    order = sorted(series, key=size)
    for theta in raiz_up_to(n, max_size):
        d = dim_raiz(theta, n)
        for v in order:
            w = tuple(a - b for a, b in zip(v, d))
            if min(w) >= 0:
                series[v] += series[w]
    return series
