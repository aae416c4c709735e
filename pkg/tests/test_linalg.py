import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from findim import linalg as la

PRIMES = [2, 3, 5, 7]


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    p = draw(st.sampled_from(PRIMES))
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(0, max_cols))
    vals = draw(st.lists(st.integers(0, p - 1), min_size=r * c, max_size=r * c))
    return np.array(vals, dtype=np.int64).reshape(r, c), p


def brute_rank(m, p):
    """log_p of the number of distinct vectors in the row span."""
    if m.size == 0:
        return 0
    seen = {tuple((np.array(cs) @ m) % p) for cs in itertools.product(range(p), repeat=m.shape[0])}
    return round(np.log(len(seen)) / np.log(p))


@settings(max_examples=150, deadline=None)
@given(matrices(max_rows=4, max_cols=4))
def test_rank_matches_span_count(mp):
    m, p = mp
    if p > 3:
        m = m[:3]
    assert la.rank(m, p) == brute_rank(m, p)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_nullity_and_kernel(mp):
    m, p = mp
    k = la.kernel_basis(m, p)
    assert k.shape[1] == m.shape[1] - la.rank(m, p)
    assert not la.mul(m, k, p).any()


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rref_is_idempotent_and_row_equivalent(mp):
    m, p = mp
    r, piv = la.rref(m, p)
    r2, piv2 = la.rref(r, p)
    assert np.array_equal(r, r2) and piv == piv2
    assert la.rank(np.vstack([m, r]) if m.size else r, p) == len(piv)


@settings(max_examples=100, deadline=None)
@given(matrices(max_rows=4, max_cols=4))
def test_inverse_of_invertible(mp):
    m, p = mp
    if m.shape[0] != m.shape[1] or la.rank(m, p) < m.shape[0]:
        return
    inv = la.inverse(m, p)
    assert np.array_equal(la.mul(m, inv, p), np.eye(m.shape[0], dtype=np.int64))


@settings(max_examples=100, deadline=None)
@given(matrices(), st.data())
def test_solve_recovers_a_solution(mp, data):
    m, p = mp
    if m.shape[1] == 0:
        return
    x = np.array(data.draw(st.lists(st.integers(0, p - 1), min_size=m.shape[1], max_size=m.shape[1])), dtype=np.int64)
    b = la.mul(m, x.reshape(-1, 1), p).reshape(-1)
    y = la.solve(m, b, p)
    assert y is not None
    assert np.array_equal(la.mul(m, np.asarray(y).reshape(-1, 1), p).reshape(-1), b)


@settings(max_examples=100, deadline=None)
@given(matrices(max_rows=4, max_cols=5), matrices(max_rows=4, max_cols=5))
def test_intersection_dimension_formula(a, b):
    (ma, p), (mb, _) = a, b
    n = 5
    ma = np.pad(ma % p, ((0, n - ma.shape[0]), (0, 0)))[:n]
    mb = np.pad(mb % p, ((0, n - mb.shape[0]), (0, 0)))[:n]
    sa, sb = la.span(ma, p), la.span(mb, p)
    inter = la.intersect(sa, sb, p)
    total = la.span_sum(sa, sb, p)
    assert inter.shape[1] + total.shape[1] == sa.shape[1] + sb.shape[1]
    assert la.contains(sa, inter, p) and la.contains(sb, inter, p)


def test_large_prime_products_do_not_overflow():
    p = 2**31 - 1
    a = np.full((3, 40), p - 1, dtype=np.int64)
    b = np.full((40, 2), p - 1, dtype=np.int64)
    want = (40 * (p - 1) ** 2) % p
    assert (la.mul(a, b, p) == want).all()


@pytest.mark.parametrize("bad", [0, 1, 4, 9, 2**31])
def test_check_prime_rejects(bad):
    with pytest.raises(ValueError):
        la.check_prime(bad)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 90), st.integers(1, 90), st.integers(0, 10**6))
def test_packed_gf2_rref_matches_generic(r, c, seed):
    rng = np.random.default_rng(seed)
    m = rng.integers(0, 2, (r, c))
    if c > 2:
        m[:, 0] = m[:, 1] ^ m[:, 2]  # force some dependence
    packed = la._rref_gf2(m.astype(np.int64))
    saved = la._GF2_PACKED_MIN
    la._GF2_PACKED_MIN = 10**12
    try:
        plain = la.rref(m, 2)
    finally:
        la._GF2_PACKED_MIN = saved
    assert packed[1] == plain[1]
    assert np.array_equal(packed[0], plain[0])


@pytest.mark.parametrize("p", [2, 3, 7, 2147483647])
def test_float_matmul_path_is_exact(p):
    rng = np.random.default_rng(p % 1000)
    a = rng.integers(0, p, (40, 70), dtype=np.int64)
    b = rng.integers(0, p, (70, 30), dtype=np.int64)
    want = (a.astype(object) @ b.astype(object)) % p
    assert np.array_equal(la.mul(a, b, p), want.astype(np.int64))
