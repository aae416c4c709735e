"""Finitistic dimension bounds built from α, Σ and the layer length of Λ.

Also here: membership in the classes ``L_i = {M : ℓℓ^∞(M) <= i}``, the two
recurrences that bound fin.dim once a pair ``(s, L)`` is supplied, a sampler
for the classes of infinite-pd summands of ``M/soc M`` and ``rad M`` over
finite-pd ``M``, and a brute-force enumeration of small modules used as a
truncated fin.dim oracle.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import Counter
from dataclasses import asdict, dataclass, field

import numpy as np

from . import linalg as la
from .decomp import EndAlgebra, registry_for
from .homology import DEFAULT_CAPS, Caps, Finite, Infinite, Unknown, classify_simples, pd
from .igusa_todorov import psi_of_classes
from .layers import infinite_vertices, ll_inf
from .modules import (
    Representation,
    direct_sum,
    projective,
    radical,
    simple,
    socle,
)


def class_membership(m: Representation, i: int, inf=None) -> bool:
    """Is ``ℓℓ^∞(m) <= i``?"""
    return ll_inf(m, inf) <= i


def ll_inf_algebra(algebra, inf=None) -> int:
    """ℓℓ^∞ of the regular module, the max over the indecomposable projectives."""
    return max((ll_inf(projective(algebra, i), inf) for i in range(algebra.n)), default=0)


def sigma_counter(algebra, caps: Caps = DEFAULT_CAPS) -> Counter:
    cls = classify_simples(algebra, caps)
    reg = registry_for(algebra)
    out: Counter = Counter()
    for v in cls.sigma_vertices:
        out.update(reg.register(simple(algebra, v)).counter())
    return out


def omega_support(algebra, counter, n: int) -> Counter:
    """Support of Ω^n applied to a class vector (multiplicities collapsed to 1).

    Ψ depends only on add M, so multiplicities never matter here and
    collapsing them keeps the numbers small for large n.
    """
    reg = registry_for(algebra)
    cur = {c for c in counter if not reg.is_projective(c)}
    for _ in range(n):
        nxt = set()
        for c in cur:
            nxt.update(reg.syzygy_classes(c))
        cur = nxt
        if not cur:
            break
    return Counter({c: 1 for c in cur})


def _psi_value(algebra, counter, window, caps):
    res = psi_of_classes(algebra, counter, window=window, caps=caps)
    return res.value, res.stable


@dataclass
class BoundReport:
    alpha: int
    infinite_simples: list
    ll_inf_algebra: int
    beta: int
    psi_term1: int | None
    psi_term2: int | None
    bound_L1: int | None
    bound_L2: int | None
    bound_main: int | None
    applicable: str
    findim_exact: int | None = None  # only when there are no simples of infinite pd
    stable: bool = True
    notes: list = field(default_factory=list)

    @property
    def unknown(self) -> bool:
        return self.psi_term1 is None or self.psi_term2 is None or not self.stable

    def to_dict(self) -> dict:
        return asdict(self)


def evaluate_bounds(algebra, caps: Caps = DEFAULT_CAPS, window: int = 8) -> BoundReport:
    cls = classify_simples(algebra, caps)
    alpha = cls.alpha
    ll = ll_inf_algebra(algebra, cls.infinite)
    labels = [algebra.quiver.vertices[v] for v in cls.sigma_vertices]
    if not cls.infinite:
        return BoundReport(
            alpha=alpha,
            infinite_simples=labels,
            ll_inf_algebra=ll,
            beta=ll - 1,
            psi_term1=0,
            psi_term2=0,
            bound_L1=alpha + 1,
            bound_L2=alpha + 2,
            bound_main=alpha + 3,
            applicable="no simple of infinite pd: gl.dim = fin.dim = alpha",
            findim_exact=alpha,
        )
    sig = sigma_counter(algebra, caps)
    term1 = omega_support(algebra, sig, alpha + 1)
    term2 = term1 + omega_support(algebra, sig, alpha + 2)
    psi1, st1 = _psi_value(algebra, term1, window, caps)
    psi2, st2 = _psi_value(algebra, term2, window, caps)
    b1 = None if psi1 is None else alpha + 1 + psi1
    b2 = None if psi2 is None else alpha + 2 + psi2
    main = None
    if ll <= 3 and psi2 is not None:
        main = alpha + 3 + psi2
    applicable = "ll_inf(algebra) <= 3: main bound" if ll <= 3 else "ll_inf(algebra) > 3: only the L_1 and L_2 bounds apply"
    notes = []
    if ll > 3:
        notes.append("fin.dim bound needs fin.dim of L_beta; use recurrence tables with a witness (s, L)")
    return BoundReport(alpha, labels, ll, ll - 1, psi1, psi2, b1, b2, main, applicable, None, st1 and st2, notes)


# --- recurrences ----------------------------------------------------------------


@dataclass
class RecurrenceTable:
    s: int
    t: int
    bracket: list  # [t]_L(0..n)
    angle: list  # <alpha>_L(0..n)
    implied_bound: int | None  # [alpha]_L(ll_inf(algebra))
    implied_bound_dual: int | None
    truncated: bool = False

    def to_dict(self) -> dict:
        return asdict(self)


def _counter_of(m) -> Counter:
    if m is None or (isinstance(m, Representation) and m.is_zero()):
        return Counter()
    return registry_for(m.algebra).register(m).counter()


def bracket_step(algebra, value: int, s: int, sig: Counter, lc: Counter, window: int, caps: Caps):
    """[t]_L(1) for t = value."""
    vec = omega_support(algebra, sig, 1 + s + value) + omega_support(algebra, lc, 2 + value)
    psi, stable = _psi_value(algebra, vec, window, caps)
    return None if psi is None or not stable else value + 2 + s + psi


def angle_step(algebra, value: int, s: int, sig: Counter, lc: Counter, window: int, caps: Caps):
    vec = omega_support(algebra, sig, 2 + s + value) + omega_support(algebra, lc, 1 + value)
    psi, stable = _psi_value(algebra, vec, window, caps)
    return None if psi is None or not stable else value + 2 + s + psi


def recurrence_tables(
    algebra, s: int, L: Representation | None, n: int, t: int | None = None, caps: Caps = DEFAULT_CAPS, window: int = 8
) -> RecurrenceTable:
    """Both recurrences to depth ``n``; ``t`` defaults to α."""
    cls = classify_simples(algebra, caps)
    t = cls.alpha if t is None else t
    sig = sigma_counter(algebra, caps)
    lc = _counter_of(L)
    truncated = False

    def table(step, start):
        nonlocal truncated
        vals = [start]
        for _ in range(n):
            nxt = step(algebra, vals[-1], s, sig, lc, window, caps)
            if nxt is None:
                truncated = True
                break
            vals.append(nxt)
        return vals

    bracket = table(bracket_step, t)
    angle = table(angle_step, cls.alpha)
    ll = ll_inf_algebra(algebra, cls.infinite)
    alpha_table = bracket if t == cls.alpha else table(bracket_step, cls.alpha)
    implied = alpha_table[ll] if ll < len(alpha_table) else None
    implied_dual = angle[ll] if ll < len(angle) else None
    return RecurrenceTable(s, t, bracket, angle, implied, implied_dual, truncated)


# --- sampled classes C(Λ) and K(Λ) -------------------------------------------------


@dataclass
class ClassProbe:
    c_classes: list  # class ids: infinite-pd summands of M/soc M
    k_classes: list  # class ids: infinite-pd summands of rad M
    sampled: int
    note: str = "sampled under-approximation"

    def to_dict(self) -> dict:
        return asdict(self)


def finite_pd_samples(algebra, budget: int, seed: int, caps: Caps = DEFAULT_CAPS) -> list:
    """Projectives plus random modules of finite pd (rejection sampling)."""
    from .random_modules import random_module

    rng = random.Random(seed)
    out = [projective(algebra, i) for i in range(algebra.n)]
    tries = 0
    while len(out) < algebra.n + budget and tries < 20 * budget:
        tries += 1
        m = random_module(algebra, rng)
        if isinstance(pd(m, caps), Finite):
            out.append(m)
    return out


def probe_C_and_K_classes(algebra, sample_budget: int = 32, seed: int = 0, caps: Caps = DEFAULT_CAPS, samples=None) -> ClassProbe:
    reg = registry_for(algebra)
    mods = samples if samples is not None else finite_pd_samples(algebra, sample_budget, seed, caps)
    c_set, k_set = set(), set()
    from .homology import graph_for

    graph = graph_for(algebra, caps)
    for m in mods:
        for sub, target in ((socle(m), c_set), (radical(m), k_set)):
            piece = sub.quotient() if target is c_set else sub.as_rep()
            if piece.is_zero():
                continue
            for c in reg.register(piece).classes():
                if isinstance(graph.class_status(c), Infinite):
                    target.add(c)
    return ClassProbe(sorted(c_set), sorted(k_set), len(mods))


# --- truncated fin.dim oracle ---------------------------------------------------


def _extension_space(mp: Representation, v: int):
    """Cocycles and coboundaries for extensions 0 -> S(v) -> M -> M' -> 0.

    The new basis vector e sits at vertex ``v`` and is killed by every arrow;
    arrows ``a: i -> v`` get an extra row ``c_a`` (length dims[i]).  Returns
    the list of arrows into ``v``, a basis of the cocycle space Z and a basis
    of the coboundaries B, both as columns in the concatenated c-coordinates.
    """
    alg = mp.algebra
    q, p = alg.quiver, mp.p
    into = [k for k, a in enumerate(q.arrows) if a.target == v]
    sizes = [mp.dims[q.arrows[k].source] for k in into]
    offs = np.cumsum([0] + sizes)
    total = int(offs[-1])
    if total == 0:
        return into, sizes, la.zeros(0, 0), la.zeros(0, 0)
    rows = []
    for rel in alg.relations:
        terms = rel.as_dict()
        w0 = next(iter(terms))
        if q.target(w0) != v:
            continue
        src = q.source(w0)
        # bottom row of the path matrix is c_last * M'(path minus last arrow)
        acc = la.zeros(total, mp.dims[src])
        for w, c in terms.items():
            last = w[-1]
            j = into.index(last)
            head = mp.path_matrix(w[:-1], src) if len(w) > 1 else la.identity(mp.dims[src])
            acc[offs[j] : offs[j + 1]] = (acc[offs[j] : offs[j + 1]] + c * head) % p
        # sum_j c_j @ head_j = 0, i.e. acc^T @ c = 0: one row per source basis vector
        rows.append(acc.T % p)
    z = la.kernel_basis(np.concatenate(rows, axis=0), p) if rows else la.identity(total)
    # coboundaries: c_a = lambda @ M'_a for lambda in (M'_v)^*
    cols = []
    for r in range(mp.dims[v]):
        vec = la.zeros(total, 1)
        for j, k in enumerate(into):
            vec[offs[j] : offs[j + 1], 0] = mp.maps[k][r]
        cols.append(vec)
    b = la.span(np.concatenate(cols, axis=1), p) if cols else la.zeros(total, 0)
    return into, sizes, la.span(z, p), b


def _extend(mp: Representation, v: int, into, sizes, c: np.ndarray) -> Representation:
    alg = mp.algebra
    dims = list(mp.dims)
    dims[v] += 1
    maps = []
    offs = np.cumsum([0] + sizes)
    for k, a in enumerate(alg.quiver.arrows):
        old = mp.maps[k]
        new = la.zeros(dims[a.target], dims[a.source])
        new[: old.shape[0], : old.shape[1]] = old
        if a.target == v:
            j = into.index(k)
            new[-1, : old.shape[1]] = c[offs[j] : offs[j + 1]]
        maps.append(new)
    return Representation(alg, dims, maps)


def _ext_complement(z: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Columns from Z completing a basis of B to one of Z."""
    basis = b.copy()
    extra = []
    for j in range(z.shape[1]):
        col = z[:, j : j + 1]
        if not la.contains(basis, col, p):
            extra.append(col)
            basis = la.span(np.concatenate([basis, col], axis=1), p)
    return np.concatenate(extra, axis=1) if extra else la.zeros(z.shape[0], 0)


class EnumerationBudgetError(RuntimeError):
    """The module enumeration would exceed its budget."""


def _ext_representatives(z: np.ndarray, b: np.ndarray, p: int, limit: int | None = None) -> list:
    """One cocycle per class of Z/B."""
    if z.shape[1] == 0:
        return [la.zeros(z.shape[0], 1)[:, 0]]
    extra = [e.reshape(-1, 1) for e in _ext_complement(z, b, p).T]
    if limit is not None and p ** len(extra) > limit:
        raise EnumerationBudgetError(f"Ext space of size {p}^{len(extra)} exceeds the budget {limit}")
    reps = []
    for coeffs in itertools.product(range(p), repeat=len(extra)):
        vec = la.zeros(z.shape[0], 1)
        for c, col in zip(coeffs, extra):
            vec = (vec + c * col) % p
        reps.append(vec[:, 0])
    return reps


def _ext_orbit_reps(x: Representation, v: int, limit: int | None = None) -> tuple:
    """Nonzero classes of Ext(X, S(v)) up to the action of Aut(X) x Aut(S(v)).

    For an indecomposable X the units of End(X) are scalars times 1 + rad, so
    c and lam*(c + c r) with r in rad End(X) give isomorphic extensions.  Each
    class is replaced by its normal form modulo W_c = {c r} scaled to have
    leading coefficient 1; only distinct normal forms are returned.
    """
    p = x.p
    into, sizes, z, b = _extension_space(x, v)
    reps = [c for c in _ext_representatives(z, b, p, limit) if c.any()]
    if not reps:
        return sizes, []
    q = x.algebra.quiver
    offs = np.cumsum([0] + sizes)
    ext_basis = _ext_complement(z, b, p)
    full = np.concatenate([b, ext_basis], axis=1)
    nb = b.shape[1]

    def coords(vec):
        sol = la.solve(full, vec, p)
        return np.asarray(sol)[nb:] % p

    end = EndAlgebra(x)
    rad = end.radical()
    rad_maps = []
    for k in range(rad.shape[1]):
        blocks = [la.zeros(d, d) for d in x.dims]
        for coeff, f in zip(rad[:, k], end.maps):
            if coeff:
                blocks = [(bl + coeff * fb) % p for bl, fb in zip(blocks, f.blocks)]
        rad_maps.append(blocks)

    def act(vec, blocks):
        out = la.zeros(vec.shape[0], 1)[:, 0]
        for j, k in enumerate(into):
            src = q.arrows[k].source
            seg = vec[offs[j] : offs[j + 1]]
            out[offs[j] : offs[j + 1]] = la.mul(seg.reshape(1, -1), blocks[src], p).reshape(-1)
        return out

    seen = {}
    for c in reps:
        u = coords(c)
        w_cols = [coords(act(c, r)) for r in rad_maps]
        w = la.span(np.stack(w_cols, axis=1), p) if w_cols else la.zeros(u.shape[0], 0)
        for j, r in enumerate(la.pivot_rows(w, p)):
            u = (u - u[r] * w[:, j]) % p
        lead = u[np.nonzero(u)[0][0]]
        u = (u * pow(int(lead), p - 2, p)) % p
        key = tuple(int(t) for t in u)
        if key not in seen:
            seen[key] = la.mul(ext_basis, u.reshape(-1, 1), p)[:, 0]
    return sizes, [seen[k] for k in sorted(seen)]


def _multisets(classes_by_dim: dict, total: int) -> list:
    """All multisets of class ids (as sorted tuples) with the given total dimension."""
    items = sorted((d, c) for d, cs in classes_by_dim.items() for c in cs)
    out = []

    def rec(start, remaining, acc):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for k in range(start, len(items)):
            d, c = items[k]
            if d <= remaining:
                acc.append(c)
                rec(k, remaining - d, acc)
                acc.pop()

    rec(0, total, [])
    return out


@dataclass
class OracleResult:
    max_dim: int  # largest dimension fully enumerated
    indecomposables: int
    max_finite_pd: int
    unknown: int
    witness: int | None  # class id realising the max
    complete: bool = True  # False when the budget stopped the enumeration early


def _assemble(parts: list, sizes_by_part: list) -> np.ndarray:
    """Cocycle of a direct sum from cocycles of its summands.

    Each part is laid out arrow by arrow; the sum's block for an arrow is the
    concatenation of the summands' blocks in summand order.
    """
    out = []
    n_arrows = len(sizes_by_part[0]) if sizes_by_part else 0
    offs = [np.cumsum([0] + sz) for sz in sizes_by_part]
    for j in range(n_arrows):
        for c, off in zip(parts, offs):
            out.append(c[off[j] : off[j + 1]])
    return np.concatenate(out) if out else la.zeros(0, 1)[:, 0]


def enumerate_indecomposables(algebra, max_dim: int, limit: int = 50000, partial: bool = False) -> dict:
    """Iso-classes of indecomposables of dimension <= ``max_dim``, keyed by dimension.

    Every indecomposable M of dimension n is an extension of M' = M/S by a
    simple S in its socle.  Writing M' as a sum of indecomposables X_i, the
    extension class has a component in each Ext(X_i, S), and all of them must
    be nonzero or the corresponding X_i would split off.  So it is enough to
    run over multisets of smaller indecomposables and over tuples of nonzero
    extension classes of the summands.
    """
    reg = registry_for(algebra)
    p = algebra.p
    by_dim: dict = {1: set()}
    for v in range(algebra.n):
        by_dim[1].update(reg.register(simple(algebra, v)).classes())
    ext_cache: dict = {}

    def nonzero_ext(cid, v):
        key = (cid, v)
        if key not in ext_cache:
            ext_cache[key] = _ext_orbit_reps(reg.rep(cid), v, limit)
        return ext_cache[key]

    size_cache: dict = {}

    def ext_size(cid, v):
        key = (cid, v)
        if key not in size_cache:
            _, _, z, b = _extension_space(reg.rep(cid), v)
            size_cache[key] = p ** (z.shape[1] - b.shape[1]) - 1
        return size_cache[key]

    seen = 0
    for n in range(2, max_dim + 1):
        found = set()
        lower = {d: sorted(by_dim[d]) for d in range(1, n)}
        combos = _multisets(lower, n - 1)

        def count(combo, v, exact=True):
            todo = 1
            for c, g in itertools.groupby(combo):
                size = len(nonzero_ext(c, v)[1]) if exact else ext_size(c, v)
                todo *= math.comb(size, len(list(g)))
            return todo

        # cheap upper bound first: all nonzero classes, before the orbit reduction
        planned = sum(count(combo, v, exact=False) for combo in combos for v in range(algebra.n))
        if seen + planned > limit:
            if partial:
                return by_dim
            raise EnumerationBudgetError(
                f"dimension {n} needs {planned} extensions; budget {limit} ({seen} already used)"
            )
        for combo in combos:
            for v in range(algebra.n):
                if not count(combo, v):
                    continue
                exts = [nonzero_ext(c, v) for c in combo]
                groups = [(c, len(list(g))) for c, g in itertools.groupby(combo)]
                base = direct_sum(*[reg.rep(c) for c in combo])
                into = [k for k, a in enumerate(algebra.quiver.arrows) if a.target == v]
                sizes = [base.dims[algebra.quiver.arrows[k].source] for k in into]
                # copies of one summand must carry classes from distinct orbits, else one splits off
                choices = [itertools.combinations(nonzero_ext(c, v)[1], mult) for c, mult in groups]
                for picked in itertools.product(*choices):
                    seen += 1
                    parts = [vec for group in picked for vec in group]
                    c = _assemble(parts, [sz for sz, _ in exts])
                    m = _extend(base, v, into, sizes, c)
                    dec = reg.register(m)
                    if len(dec) == 1:
                        found.update(dec.classes())
        by_dim[n] = found
    return by_dim


def truncated_findim(
    algebra, max_dim: int = 5, caps: Caps = DEFAULT_CAPS, limit: int = 50000, partial: bool = False
) -> OracleResult:
    """Largest finite pd among all modules of dimension <= ``max_dim``.

    pd of a direct sum is the max over its summands, so indecomposables suffice.
    With ``partial`` the enumeration stops at the last dimension that fits the
    budget instead of raising, and the result is marked incomplete.
    """
    by_dim = enumerate_indecomposables(algebra, max_dim, limit, partial)
    reached = max(by_dim)
    from .homology import graph_for

    graph = graph_for(algebra, caps)
    best, witness, unknown, count = 0, None, 0, 0
    for d in sorted(by_dim):
        for c in sorted(by_dim[d]):
            count += 1
            st = graph.class_status(c)
            if isinstance(st, Unknown):
                unknown += 1
            elif isinstance(st, Finite) and st.n > best:
                best, witness = st.n, c
    return OracleResult(reached, count, best, unknown, witness, reached == max_dim)
