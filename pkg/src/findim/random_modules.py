"""Seeded generators: random monomial algebras, random modules, short exact sequences."""

from __future__ import annotations

import random

import numpy as np

from . import linalg as la
from .modules import (
    Representation,
    direct_sum,
    dualize,
    generated_submodule,
    projective,
    radical,
)
from .quiver import BoundAlgebra, Quiver, Relation


def _monomial_paths(q: Quiver, length: int, dead: set) -> list:
    """Paths of the given length that avoid every path in ``dead`` as a subpath."""
    paths = [(k,) for k in range(len(q.arrows))]
    for _ in range(length - 1):
        nxt = []
        for w in paths:
            end = q.arrows[w[-1]].target
            for k, a in enumerate(q.arrows):
                if a.source == end:
                    nxt.append(w + (k,))
        paths = [w for w in nxt if not any(_has_subpath(w, d) for d in dead)]
    return paths


def _has_subpath(w: tuple, d: tuple) -> bool:
    n = len(d)
    return any(w[i : i + n] == d for i in range(len(w) - n + 1))


def random_monomial_algebra(
    rng: random.Random,
    max_vertices: int = 4,
    max_arrows: int = 6,
    p: int = 2,
    max_loewy: int = 4,
    max_dim: int = 24,
) -> BoundAlgebra:
    """A random admissible monomial algebra of dimension at most ``max_dim``.

    Some paths of length 2 and 3 are declared zero at random; every surviving
    path of length ``L`` (with ``L <= max_loewy``) is then killed so the ideal
    contains all paths of length ``L``.  Oversized draws are rejected.
    """
    while True:
        a = _draw_monomial(rng, max_vertices, max_arrows, p, max_loewy)
        if a.dim <= max_dim:
            return a


def _draw_monomial(rng, max_vertices, max_arrows, p, max_loewy) -> BoundAlgebra:
    n = rng.randint(1, max_vertices)
    m = rng.randint(1, max_arrows)
    arrows = []
    for k in range(m):
        s, t = rng.randrange(n), rng.randrange(n)
        arrows.append((f"a{k}", str(s + 1), str(t + 1)))
    q = Quiver.from_labels([str(i + 1) for i in range(n)], arrows)
    dead: set = set()
    for w in _monomial_paths(q, 2, dead):
        if rng.random() < 0.4:
            dead.add(w)
    for w in _monomial_paths(q, 3, dead):
        if rng.random() < 0.3:
            dead.add(w)
    cut = rng.randint(3, max_loewy)
    for w in _monomial_paths(q, cut, dead):
        dead.add(w)
    # keep only minimal zero paths
    minimal = sorted(d for d in dead if not any(e != d and _has_subpath(d, e) for e in dead))
    rels = [Relation.from_dict({d: 1}, p) for d in minimal]
    return BoundAlgebra(q, rels, p)


def random_algebras(count: int, seed: int, **kw) -> list:
    rng = random.Random(seed)
    return [random_monomial_algebra(rng, **kw) for _ in range(count)]


def _random_vector(rng: random.Random, d: int, p: int) -> np.ndarray:
    return np.array([rng.randrange(p) for _ in range(d)], dtype=la.DTYPE)


def random_submodule(m: Representation, rng: random.Random, gens: int = 2, inside=None):
    """Submodule generated by a few random homogeneous vectors (of ``inside`` if given)."""
    p = m.p
    vecs = []
    for _ in range(gens):
        cand = [i for i in range(m.algebra.n) if (inside.bases[i].shape[1] if inside is not None else m.dims[i])]
        if not cand:
            break
        i = rng.choice(cand)
        if inside is not None:
            b = inside.bases[i]
            v = la.mul(b, _random_vector(rng, b.shape[1], p).reshape(-1, 1), p).reshape(-1)
        else:
            v = _random_vector(rng, m.dims[i], p)
        vecs.append((i, v))
    return generated_submodule(m, vecs)


def random_module(algebra: BoundAlgebra, rng: random.Random, max_dim: int = 12) -> Representation:
    """Random quotient of a small projective by a random submodule of its radical.

    Half of the time the dual construction is used instead (a submodule of an
    injective), so both tops and socles vary.
    """
    dual = rng.random() < 0.5
    alg = algebra.opposite() if dual else algebra
    for _ in range(20):
        tops = [rng.randrange(alg.n) for _ in range(rng.randint(1, 2))]
        big = direct_sum(*[projective(alg, i) for i in tops])
        sub = random_submodule(big, rng, gens=rng.randint(0, 2), inside=radical(big))
        mod = sub.quotient()
        if 0 < mod.dim <= max_dim:
            break
    if mod.dim > max_dim:
        # fall back to a radical layer quotient
        mod = radical(big).quotient()
    if dual:
        mod = dualize(mod)  # the opposite of the opposite is the cached original
    return mod


def random_ses(b: Representation, rng: random.Random, gens: int = 2):
    """``(A, B, C, inclusion, projection)`` for a random submodule ``A`` of ``B``."""
    sub = random_submodule(b, rng, gens=gens)
    return sub.as_rep(), b, sub.quotient(), sub.inclusion(), sub.projection()
