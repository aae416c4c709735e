import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from findim import linalg as la
from findim.modules import (
    Representation,
    direct_sum,
    dualize,
    injective,
    is_projective,
    loewy_length,
    projective,
    projective_cover,
    radical,
    regular_module,
    simple,
    socle,
    syzygy,
    top_dims,
)
from findim.random_modules import random_algebras, random_module

ALGEBRAS = random_algebras(6, seed=3)


def brute_radical(m):
    """At each vertex: span of the images of incoming arrows."""
    q, p = m.algebra.quiver, m.p
    out = []
    for j in range(m.algebra.n):
        cols = [m.maps[k] for k, a in enumerate(q.arrows) if a.target == j and m.dims[a.source]]
        out.append(la.span(np.concatenate(cols, axis=1), p) if cols else la.zeros(m.dims[j], 0))
    return out


def brute_socle(m):
    """At each vertex: common kernel of the outgoing arrows."""
    q, p = m.algebra.quiver, m.p
    out = []
    for i in range(m.algebra.n):
        rows = [m.maps[k] for k, a in enumerate(q.arrows) if a.source == i and m.dims[a.target]]
        if rows:
            out.append(la.span(la.kernel_basis(np.concatenate(rows, axis=0), p), p))
        else:
            out.append(la.identity(m.dims[i]))
    return out


def same_spaces(xs, ys, p):
    return all(la.span(x, p).shape == la.span(y, p).shape and np.array_equal(la.span(x, p), la.span(y, p)) for x, y in zip(xs, ys))


modules_strategy = st.tuples(st.integers(0, len(ALGEBRAS) - 1), st.integers(0, 10**6))


def draw(t):
    k, seed = t
    return random_module(ALGEBRAS[k], random.Random(seed))


@settings(max_examples=60, deadline=None)
@given(modules_strategy)
def test_radical_and_socle_match_brute_force(t):
    m = draw(t)
    assert same_spaces(radical(m).bases, brute_radical(m), m.p)
    assert same_spaces(socle(m).bases, brute_socle(m), m.p)


@settings(max_examples=60, deadline=None)
@given(modules_strategy)
def test_syzygy_dimension_and_cover(t):
    m = draw(t)
    cover = projective_cover(m)
    om = syzygy(m)
    pdim = sum(m.algebra.projective_dims()[i] * d for i, d in enumerate(top_dims(m)))
    assert om.dim == pdim - m.dim
    assert cover is not None


@settings(max_examples=60, deadline=None)
@given(modules_strategy)
def test_double_dual_is_identity(t):
    m = draw(t)
    dd = dualize(dualize(m))
    assert dd.algebra is m.algebra
    assert dd.dims == m.dims
    assert all(np.array_equal(x, y) for x, y in zip(dd.maps, m.maps))


@settings(max_examples=60, deadline=None)
@given(modules_strategy)
def test_dual_swaps_top_and_socle(t):
    m = draw(t)
    d = dualize(m)
    assert top_dims(d) == tuple(b.shape[1] for b in socle(m).bases)
    assert loewy_length(d) == loewy_length(m)


@pytest.mark.parametrize("k", range(len(ALGEBRAS)))
def test_projectives_and_injectives(k):
    a = ALGEBRAS[k]
    for i in range(a.n):
        pi = projective(a, i)
        assert pi.dims == tuple(
            sum(1 for w in a.paths_from(i) if (a.quiver.target(w, i) if w else i) == j) for j in range(a.n)
        )
        assert is_projective(pi)
        assert top_dims(pi) == tuple(int(j == i) for j in range(a.n))
        inj = injective(a, i)
        assert tuple(b.shape[1] for b in socle(inj).bases) == tuple(int(j == i) for j in range(a.n))
    assert regular_module(a).dim == a.dim


def test_relations_are_enforced(example):
    a, _ = example
    bad = [None] * len(a.quiver.arrows)
    dims = (1, 0, 0, 0, 0)
    bad[a.quiver.arrow_index("alpha")] = [[1]]
    with pytest.raises(ValueError):
        Representation(a, dims, bad)


def test_simple_modules(example):
    a, mods = example
    s = simple(a, 0)
    assert s.dim == 1 and is_projective(s) is False
    t = mods["T"]
    assert top_dims(t) == (1, 0, 0, 0, 0)
    assert tuple(b.shape[1] for b in socle(t).bases) == (1, 0, 0, 0, 0)
    assert direct_sum(s, t).dims == (3, 0, 0, 0, 0)


def _span_equal(fs, gs, p):
    if len(fs) != len(gs):
        return False
    if not fs:
        return True
    flat = lambda hs: np.stack([np.concatenate([b.reshape(-1) for b in h.blocks]) for h in hs], axis=1)
    a, b = flat(fs), flat(gs)
    return la.rank(a, p) == len(fs) == la.rank(np.concatenate([a, b], axis=1), p)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, len(ALGEBRAS) - 1), st.integers(0, 10**6))
def test_hom_from_presentation_matches_matrix_equations(k, seed):
    from findim.modules import _hom_basis_dense, _hom_basis_presented

    a = ALGEBRAS[k]
    rng = random.Random(seed)
    m, n = random_module(a, rng), random_module(a, rng)
    pres = _hom_basis_presented(m, n)
    assert all(f.check() for f in pres)
    assert _span_equal(pres, _hom_basis_dense(m, n), a.p)
