from collections import Counter
from itertools import combinations_with_replacement

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cyclic_quiver.counting import kostant_series
from cyclic_quiver.quiver import (
    UNIT,
    CompositionError,
    KostantPartition,
    Multipartition,
    Raiz,
    cartan_matrix,
    cartan_pairing,
    covering_degree,
    dim_raiz,
    enumerate_kostant,
    enumerate_multipartitions,
    frown,
    in_B,
    in_E,
    kappa_coords,
    kostant_from_pairs,
    parse_raiz,
    partition_from_json,
    partition_to_json,
    raiz,
    size,
    smile,
    vectors_up_to,
)

from strategies import partitions_of_rank, raiz_of_rank, ranks


def kp(n, *pairs):
    return kostant_from_pairs(pairs, n)


def brute_force_kostant(alpha):
    """Oracle: all multisets of raiz of bounded length, filtered by dimension."""
    n, total = len(alpha), sum(alpha)
    pool = [raiz(q - L + 1, q, n) for L in range(1, total + 1) for q in range(n)]
    found = set()
    for k in range(total + 1):
        for combo in combinations_with_replacement(pool, k):
            if KostantPartition(combo).dim(n) == tuple(alpha):
                found.add(KostantPartition(combo))
    return found


# -- raiz ---------------------------------------------------------------------


def test_rank_must_be_at_least_two():
    with pytest.raises(ValueError):
        enumerate_kostant((3,))


def test_dim_raiz_examples():
    assert dim_raiz(UNIT, 3) == (0, 0, 0)
    assert dim_raiz(Raiz(0, 1), 2) == (1, 1)
    assert dim_raiz(Raiz(-2, 1), 3) == (1, 2, 1)


def test_normalization():
    assert raiz(1, 2, 2) == Raiz(-1, 0)
    assert raiz(0, 3, 2) == Raiz(-2, 1)
    assert parse_raiz("1..4", 3) == Raiz(-2, 1)
    assert parse_raiz("unit", 3) is UNIT
    with pytest.raises(ValueError):
        raiz(2, 1, 3)


def test_smile_examples():
    assert smile(UNIT, Raiz(0, 0), 2) == Raiz(0, 0)
    assert smile(Raiz(0, 0), UNIT, 2) == Raiz(0, 0)
    assert smile(Raiz(1, 1), Raiz(0, 0), 2) == Raiz(-1, 0)
    assert smile(raiz(1, 2, 3), Raiz(0, 1), 3) == Raiz(-2, 1)
    with pytest.raises(CompositionError):
        smile(Raiz(0, 0), Raiz(0, 0), 3)


def test_frown_examples():
    theta = Raiz(-1, 0)
    assert frown(theta, theta, 2) == UNIT
    assert frown(Raiz(-1, 0), Raiz(0, 0), 2) == Raiz(1, 1)
    assert frown(theta, UNIT, 2) == theta
    with pytest.raises(CompositionError):
        frown(Raiz(0, 0), Raiz(1, 1), 2)


def test_B_and_E_membership():
    assert all(in_B(UNIT, i, 4) and in_E(UNIT, i, 4) for i in range(4))
    assert in_E(Raiz(-1, 0), 0, 2)
    assert not in_B(Raiz(-1, 0), 0, 2)


def test_cartan_matrix():
    assert cartan_matrix(2) == [[2, -2], [-2, 2]]
    assert cartan_matrix(3) == [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]
    assert cartan_pairing(0, (1, 1, 1)) == 0


@given(st.data())
def test_smile_frown_inverse(data):
    n = data.draw(ranks)
    lower = data.draw(raiz_of_rank(n))
    upper_len = data.draw(st.integers(1, 6))
    start = lower.q + 1
    upper = raiz(start, start + upper_len - 1, n)
    eta = smile(lower, upper, n)
    assert frown(eta, upper, n) == lower
    assert dim_raiz(eta, n) == tuple(a + b for a, b in zip(dim_raiz(lower, n), dim_raiz(upper, n)))


@given(st.data())
def test_raiz_normalized_and_dim_consistent(data):
    n = data.draw(ranks)
    theta = data.draw(raiz_of_rank(n, 10))
    assert 0 <= theta.q <= n - 1
    dims = dim_raiz(theta, n)
    assert size(dims) == theta.length
    assert dims == tuple(sum(1 for j in range(theta.p, theta.q + 1) if j % n == r) for r in range(n))


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("p", [1, 2, 3])
def test_exactly_n_raiz_of_dimension_p_delta(n, p):
    hits = [raiz(q - p * n + 1, q, n) for q in range(n)]
    assert len(set(hits)) == n
    assert all(dim_raiz(t, n) == (p,) * n for t in hits)


# -- enumeration -----------------------------------------------------------------


def test_enumerate_examples():
    assert enumerate_kostant((0, 0)) == (KostantPartition(),)
    assert enumerate_kostant((1, 0)) == (kp(2, (0, 0)),)
    assert set(enumerate_kostant((1, 1))) == {kp(2, (0, 1)), kp(2, (-1, 0)), kp(2, (0, 0), (1, 1))}


def test_enumeration_order_is_canonical():
    parts = enumerate_kostant((2, 2))
    assert list(parts) == sorted(parts, key=KostantPartition.sort_key)
    assert len(set(parts)) == len(parts)


@pytest.mark.parametrize("n,max_size", [(2, 4), (3, 3), (4, 3)])
def test_enumeration_matches_brute_force(n, max_size):
    for alpha in vectors_up_to(n, max_size):
        assert set(enumerate_kostant(alpha)) == brute_force_kostant(alpha), alpha


# frozen from the Euler-product recurrence in counting.py, an independent computation
N2_COUNTS_BY_SIZE = [1, 2, 5, 10, 20, 36, 65, 110, 185, 300, 481, 752, 1165]
N2_GRID = [1, 1, 1, 1, 1, 3, 4, 4, 1, 4, 10, 13, 1, 4, 13, 27]


def test_frozen_counts_rank_two():
    by_size = Counter()
    for alpha in vectors_up_to(2, 12):
        by_size[size(alpha)] += len(enumerate_kostant(alpha))
    assert [by_size[k] for k in range(13)] == N2_COUNTS_BY_SIZE
    assert [len(enumerate_kostant((a, b))) for a in range(4) for b in range(4)] == N2_GRID


def test_frozen_counts_balanced():
    assert len(enumerate_kostant((4, 4, 4))) == 788
    assert len(enumerate_kostant((3, 3, 3, 3))) == 1267


@pytest.mark.parametrize("n,D", [(2, 8), (3, 6), (4, 5)])
def test_counts_match_euler_product(n, D):
    series = kostant_series(n, D)
    for alpha in vectors_up_to(n, D):
        assert len(enumerate_kostant(alpha)) == series[alpha], alpha


def test_multipartition_examples():
    assert enumerate_multipartitions((0, 0)) == (Multipartition(),)
    assert enumerate_multipartitions((0, 1, 0)) == (Multipartition([kp(3, (1, 1))]),)
    got = set(enumerate_multipartitions((1, 1)))
    assert got == {
        Multipartition([kp(2, (0, 1))]),
        Multipartition([kp(2, (-1, 0))]),
        Multipartition([kp(2, (0, 0), (1, 1))]),
        Multipartition([kp(2, (0, 0)), kp(2, (1, 1))]),
    }
    with pytest.raises(ValueError):
        Multipartition([KostantPartition()])


def test_covering_degree_examples():
    distinct = Multipartition([kp(2, (0, 0)), kp(2, (1, 1))])
    assert covering_degree(distinct, 2) == 1
    same_dim = Multipartition([kp(2, (0, 1)), kp(2, (-1, 0))])
    assert covering_degree(same_dim, 2) == 2
    repeated = Multipartition([kp(2, (0, 0)), kp(2, (0, 0))])
    assert covering_degree(repeated, 2) == 1


def test_kappa_coords_examples():
    assert kappa_coords(KostantPartition(), 0, 2) == {}
    assert kappa_coords(kp(2, (0, 1)), 1, 2) == {(0, 1): 1}
    assert kappa_coords(kp(2, (0, 0)), 1, 2) == {(2, 2): 1}


@given(st.data())
def test_kappa_coords_shift_equivariant(data):
    n = data.draw(ranks)
    kappa = data.draw(partitions_of_rank(n))
    s = data.draw(st.integers(-5, 5))
    a, b = kappa_coords(kappa, s, n), kappa_coords(kappa, s + n, n)
    assert {(p + n, q + n): m for (p, q), m in a.items()} == b
    for (p, q) in a:
        assert s <= q <= s + n - 1


@given(st.data())
def test_partition_json_roundtrip(data):
    n = data.draw(ranks)
    kappa = data.draw(partitions_of_rank(n))
    assert partition_from_json(partition_to_json(kappa), n) == kappa
