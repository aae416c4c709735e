"""Layer functors attached to the infinite/finite split of the simples.

Write ``inf`` for the vertices whose simple has infinite projective
dimension and ``fin`` for the rest.  Everything here is computed inside the
ambient module, so each result is a ``Submodule`` (or a quotient of ``M`` by
one) and structure maps come for free.

* ``K(M)``: largest submodule with all composition factors in ``fin``.
* ``Q(M) = M/K(M)``.
* ``S(M)``: smallest submodule whose quotient has all factors in ``fin``.
* ``C(M) = M/S(M)``.

Every function accepts an explicit ``inf`` set; by default it is taken from
``classify_simples``.  The explicit form is what lets the dual statements be
checked over the opposite algebra with the original vertex split.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .homology import DEFAULT_CAPS, Caps, classify_simples
from .modules import (
    ModuleMap,
    Representation,
    Submodule,
    radical_of,
    radical_series,
    socle_preimage,
    socle_series,
    whole,
    zero_sub,
)


class UndefinedError(ValueError):
    pass


def infinite_vertices(m_or_algebra, caps: Caps = DEFAULT_CAPS) -> frozenset:
    algebra = getattr(m_or_algebra, "algebra", m_or_algebra)
    return classify_simples(algebra, caps).infinite


def _split(m: Representation, inf):
    if inf is None:
        inf = infinite_vertices(m)
    inf = frozenset(inf)
    fin = frozenset(range(m.algebra.n)) - inf
    return inf, fin


# --- closures in ambient coordinates ----------------------------------------


def k_closure(sub: Submodule, fin) -> Submodule:
    """Preimage of K(M/sub): grow ``sub`` by finite-vertex socle layers until stable."""
    cur = sub
    while True:
        nxt = socle_preimage(cur, vertices=fin)
        if nxt.dims == cur.dims:
            return cur
        cur = nxt


def _radical_at(sub: Submodule, fin) -> Submodule:
    rad = radical_of(sub)
    return Submodule(sub.ambient, [rad.bases[i] if i in fin else sub.bases[i] for i in range(len(sub.bases))])


def s_reduce(sub: Submodule, fin) -> Submodule:
    """S(sub) as a submodule of the ambient: peel finite-vertex top layers until stable."""
    cur = sub
    while True:
        nxt = _radical_at(cur, fin)
        if nxt.dims == cur.dims:
            return cur
        cur = nxt


# --- the four functors -------------------------------------------------------


def K_sub(m: Representation, inf=None) -> Submodule:
    _, fin = _split(m, inf)
    return k_closure(zero_sub(m), fin)


def S_sub(m: Representation, inf=None) -> Submodule:
    _, fin = _split(m, inf)
    return s_reduce(whole(m), fin)


def Q_quot(m: Representation, inf=None) -> tuple:
    """``(Q(M), projection M -> Q(M))``."""
    k = K_sub(m, inf)
    return k.quotient(), k.projection()


def C_quot(m: Representation, inf=None) -> tuple:
    """``(C(M), projection M -> C(M))``."""
    s = S_sub(m, inf)
    return s.quotient(), s.projection()


def Q(m: Representation, inf=None) -> Representation:
    return K_sub(m, inf).quotient()


def S(m: Representation, inf=None) -> Representation:
    return S_sub(m, inf).as_rep()


def K(m: Representation, inf=None) -> Representation:
    return K_sub(m, inf).as_rep()


def C(m: Representation, inf=None) -> Representation:
    return S_sub(m, inf).quotient()


def _sub_coords(sub: Submodule, vertex: int, vecs: np.ndarray) -> np.ndarray:
    return la.coordinates(sub.bases[vertex], vecs, sub.ambient.p)


def Q_map(f: ModuleMap, inf=None) -> ModuleMap:
    """Induced map Q(f): Q(M) -> Q(N)."""
    m, n, p = f.source, f.target, f.source.p
    km, kn = K_sub(m, inf), K_sub(n, inf)
    qm, qn = km.quotient(), kn.quotient()
    blocks = []
    for i in range(m.algebra.n):
        lift = la.complement(km.bases[i], p)
        proj = la.quotient_projection(kn.bases[i], p)
        blocks.append(la.mul(proj, la.mul(f.blocks[i], lift, p), p))
    return ModuleMap(qm, qn, tuple(blocks))


def S_map(f: ModuleMap, inf=None) -> ModuleMap:
    """Restriction S(f): S(M) -> S(N)."""
    m, n, p = f.source, f.target, f.source.p
    sm, sn = S_sub(m, inf), S_sub(n, inf)
    blocks = []
    for i in range(m.algebra.n):
        img = la.mul(f.blocks[i], sm.bases[i], p)
        blocks.append(_sub_coords(sn, i, img) if sn.bases[i].shape[1] else la.zeros(0, img.shape[1]))
    return ModuleMap(sm.as_rep(), sn.as_rep(), tuple(blocks))


# --- infinite layer lengths ---------------------------------------------------


def F_iterates(m: Representation, inf=None) -> list:
    """``[S(M), F S(M), F^2 S(M), ...]`` ending with the first zero, as submodules of M."""
    _, fin = _split(m, inf)
    cur = s_reduce(whole(m), fin)
    out = [cur]
    while not cur.is_zero():
        cur = s_reduce(radical_of(cur), fin)
        out.append(cur)
    return out


def ll_inf(m: Representation, inf=None) -> int:
    """Least i with F^i(S(M)) = 0."""
    return len(F_iterates(m, inf)) - 1


def G_iterates(m: Representation, inf=None) -> list:
    """Kernels X_i with ``G^i(M) = M/X_i``, stopping once Q(G^i M) = 0.

    Returned as pairs ``(X_i, Kclose(X_i))``; the second entry is the kernel of
    ``M -> Q(G^i M)``.
    """
    _, fin = _split(m, inf)
    x = zero_sub(m)
    out = []
    while True:
        kx = k_closure(x, fin)
        out.append((x, kx))
        if kx.is_everything():
            return out
        x = socle_preimage(kx)


def ll_inf_dual(m: Representation, inf=None) -> int:
    """Least i with Q(G^i(M)) = 0, where G = Q/(soc Q)."""
    return len(G_iterates(m, inf)) - 1


def _layer_dims(series: list) -> list:
    """Dimension vectors of consecutive quotients of a chain of submodules."""
    out = []
    for a, b in zip(series, series[1:]):
        out.append(tuple(x - y for x, y in zip(a.dims, b.dims)))
    return out


def radical_layers(m: Representation) -> list:
    return _layer_dims(radical_series(m))


def socle_layers(m: Representation) -> list:
    series = socle_series(m)  # ascending from 0
    return [tuple(y - x for x, y in zip(a.dims, b.dims)) for a, b in zip(series, series[1:])]


def _hits(layer, inf) -> bool:
    return any(layer[i] for i in inf)


def l_inf_rad(m: Representation, inf=None) -> int:
    inf, _ = _split(m, inf)
    return sum(1 for layer in radical_layers(m) if _hits(layer, inf))


def l_inf_soc(m: Representation, inf=None) -> int:
    inf, _ = _split(m, inf)
    return sum(1 for layer in socle_layers(m) if _hits(layer, inf))


# --- counting functions -------------------------------------------------------


def phi_fn(m: Representation, inf=None) -> int:
    """First radical layer index whose top has a simple of infinite pd."""
    inf, _ = _split(m, inf)
    for j, layer in enumerate(radical_layers(m)):
        if _hits(layer, inf):
            return j
    raise UndefinedError("φ undefined: S(M) = 0")


def phi_brute(m: Representation, inf=None) -> int:
    """φ straight from its three defining clauses, for cross-checking ``phi_fn``."""
    inf, fin = _split(m, inf)
    series = radical_series(m)
    s_m = s_reduce(whole(m), fin)
    if s_m.is_zero():
        raise UndefinedError("φ undefined: S(M) = 0")
    layers = _layer_dims(series)
    for j in range(len(layers)):
        if not _hits(layers[j], inf):
            continue
        if all(not _hits(layers[i], inf) for i in range(j)) and all(
            s_reduce(series[i], fin) == s_m for i in range(j + 1)
        ):
            return j
    raise AssertionError("no index satisfies the defining clauses")


def zeta_fn(m: Representation, inf=None) -> list:
    """ζ(0) = φ(M), ζ(i+1) = ζ(i) + 1 + φ(rad^{ζ(i)+1} M), for i < ℓℓ^∞(M)."""
    inf, _ = _split(m, inf)
    n = ll_inf(m, inf)
    if n == 0:
        raise UndefinedError("ζ undefined: ℓℓ^∞(M) = 0")
    layers = radical_layers(m)
    hits = [j for j, layer in enumerate(layers) if _hits(layer, inf)]
    # φ(rad^k M) is the distance from k to the next infinite layer
    out = [hits[0]]
    while len(out) < n:
        nxt = [j for j in hits if j > out[-1]]
        if not nxt:
            raise AssertionError("ζ ran past the last infinite layer")
        out.append(nxt[0])
    return out


def r_inf(m: Representation, inf=None) -> int:
    inf, _ = _split(m, inf)
    if ll_inf(m, inf) == 0:
        return 0
    last = zeta_fn(m, inf)[-1]
    return sum(1 for k, layer in enumerate(radical_layers(m)) if k > last and _hits(layer, inf))


@dataclass
class LayerProfile:
    ll_inf_top: int
    ll_inf_soc: int
    l_inf_rad: int
    l_inf_soc: int
    r_inf: int
    loewy_length: int
    zeta: list = field(default_factory=list)
    phi_first: int | None = None

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def layer_profile(m: Representation, inf=None) -> LayerProfile:
    inf, _ = _split(m, inf)
    ll = ll_inf(m, inf)
    try:
        phi = phi_fn(m, inf)
    except UndefinedError:
        phi = None
    return LayerProfile(
        ll_inf_top=ll,
        ll_inf_soc=ll_inf_dual(m, inf),
        l_inf_rad=l_inf_rad(m, inf),
        l_inf_soc=l_inf_soc(m, inf),
        r_inf=r_inf(m, inf),
        loewy_length=len(radical_layers(m)),
        zeta=zeta_fn(m, inf) if ll else [],
        phi_first=phi,
    )
