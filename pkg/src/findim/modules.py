"""Finite-dimensional left modules over a bound quiver algebra.

A module is a quiver representation: a vector space ``GF(p)^{d_i}`` at each
vertex and, for every arrow ``a: i -> j``, a ``d_j x d_i`` matrix.  A path
``a_1 * ... * a_k`` acts as ``M[a_k] @ ... @ M[a_1]``.
"""

from __future__ import annotations

import hashlib
from collections import Counter
from dataclasses import dataclass

import numpy as np

from . import linalg as la
from .quiver import BoundAlgebra


class Representation:
    """Quiver representation satisfying the relations of ``algebra``."""

    __slots__ = ("algebra", "dims", "maps", "_key")

    def __init__(self, algebra: BoundAlgebra, dims, maps=None, check: bool = True):
        self.algebra = algebra
        self.dims = tuple(int(d) for d in dims)
        if len(self.dims) != algebra.n:
            raise ValueError(f"dimension vector has {len(self.dims)} entries, quiver has {algebra.n} vertices")
        p = algebra.p
        arrows = algebra.quiver.arrows
        if maps is None:
            maps = [None] * len(arrows)
        out = []
        for a, m in zip(arrows, maps):
            shape = (self.dims[a.target], self.dims[a.source])
            m = la.zeros(*shape) if m is None else la.asmat(m, p, shape)
            if m.shape != shape:
                raise ValueError(f"arrow {a.name}: matrix shape {m.shape}, expected {shape}")
            out.append(m)
        if len(out) != len(arrows):
            raise ValueError("wrong number of arrow matrices")
        self.maps = tuple(out)
        self._key = None
        if check:
            self.check_relations()

    def __repr__(self) -> str:
        return f"Representation(dims={self.dims})"

    @property
    def p(self) -> int:
        return self.algebra.p

    @property
    def dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.dim == 0

    def path_matrix(self, path, start: int | None = None) -> np.ndarray:
        if not path:
            return la.identity(self.dims[start])
        m = self.maps[path[0]]
        for a in path[1:]:
            m = la.mul(self.maps[a], m, self.p)
        return m

    def check_relations(self) -> None:
        q = self.algebra.quiver
        for r in self.algebra.relations:
            w0 = r.terms[0][0]
            acc = la.zeros(self.dims[q.target(w0)], self.dims[q.source(w0)])
            for w, c in r.terms:
                acc = (acc + c * self.path_matrix(w)) % self.p
            if acc.any():
                raise ValueError(f"relation {r} does not vanish on the representation")

    def key(self) -> str:
        """Content hash of the exact matrices (not an isomorphism invariant)."""
        if self._key is None:
            h = hashlib.sha1()
            h.update(repr((self.p, self.dims)).encode())
            for m in self.maps:
                h.update(np.ascontiguousarray(m).tobytes())
            self._key = h.hexdigest()
        return self._key

    def offsets(self) -> list:
        out, acc = [], 0
        for d in self.dims:
            out.append(acc)
            acc += d
        return out

    def to_dict(self) -> dict:
        return {"dims": list(self.dims), "maps": [m.tolist() for m in self.maps]}

    @classmethod
    def from_dict(cls, algebra: BoundAlgebra, d: dict) -> "Representation":
        dims = d["dims"]
        maps = []
        for a, m in zip(algebra.quiver.arrows, d["maps"]):
            maps.append(np.array(m, dtype=la.DTYPE).reshape(dims[a.target], dims[a.source]))
        return cls(algebra, dims, maps)


@dataclass(frozen=True)
class ModuleMap:
    source: Representation
    target: Representation
    blocks: tuple  # per-vertex matrices of shape (target.dims[i], source.dims[i])

    @property
    def p(self) -> int:
        return self.source.p

    def check(self) -> bool:
        p = self.p
        for k, a in enumerate(self.source.algebra.quiver.arrows):
            lhs = la.mul(self.target.maps[k], self.blocks[a.source], p)
            rhs = la.mul(self.blocks[a.target], self.source.maps[k], p)
            if not np.array_equal(lhs, rhs):
                return False
        return True

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """``self o other``."""
        return ModuleMap(other.source, self.target, tuple(la.mul(a, b, self.p) for a, b in zip(self.blocks, other.blocks)))

    def rank(self) -> int:
        return sum(la.rank(b, self.p) for b in self.blocks)

    def is_injective(self) -> bool:
        return self.rank() == self.source.dim

    def is_surjective(self) -> bool:
        return self.rank() == self.target.dim

    def is_iso(self) -> bool:
        return self.source.dims == self.target.dims and self.is_injective()

    def kernel(self) -> "Submodule":
        return Submodule(self.source, tuple(la.span(la.kernel_basis(b, self.p), self.p) for b in self.blocks))

    def image(self) -> "Submodule":
        return Submodule(self.target, tuple(la.span(b, self.p) for b in self.blocks))

    def cokernel(self) -> Representation:
        return self.image().quotient()

    def total(self) -> np.ndarray:
        """Block-diagonal matrix on the total spaces."""
        out = la.zeros(self.target.dim, self.source.dim)
        ro, co = self.target.offsets(), self.source.offsets()
        for i, b in enumerate(self.blocks):
            out[ro[i] : ro[i] + b.shape[0], co[i] : co[i] + b.shape[1]] = b
        return out

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.source, self.target, tuple((a + b) % self.p for a, b in zip(self.blocks, other.blocks)))

    def scale(self, c: int) -> "ModuleMap":
        return ModuleMap(self.source, self.target, tuple((c * b) % self.p for b in self.blocks))


def identity_map(m: Representation) -> ModuleMap:
    return ModuleMap(m, m, tuple(la.identity(d) for d in m.dims))


def zero_map(m: Representation, n: Representation) -> ModuleMap:
    return ModuleMap(m, n, tuple(la.zeros(b, a) for a, b in zip(m.dims, n.dims)))


class Submodule:
    """Arrow-stable family of subspaces of ``ambient``, stored in canonical bases."""

    __slots__ = ("ambient", "bases")

    def __init__(self, ambient: Representation, bases):
        self.ambient = ambient
        self.bases = tuple(bases)

    def __repr__(self) -> str:
        return f"Submodule(dims={self.dims} in {self.ambient.dims})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Submodule)
            and self.ambient is other.ambient
            and all(np.array_equal(a, b) for a, b in zip(self.bases, other.bases))
        )

    def __hash__(self):
        return hash((id(self.ambient), self.dims))

    @property
    def dims(self) -> tuple:
        return tuple(b.shape[1] for b in self.bases)

    @property
    def dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.dim == 0

    def is_everything(self) -> bool:
        return self.dims == self.ambient.dims

    def contains(self, other: "Submodule") -> bool:
        p = self.ambient.p
        return all(la.contains(a, b, p) for a, b in zip(self.bases, other.bases))

    def is_stable(self) -> bool:
        m, p = self.ambient, self.ambient.p
        for k, a in enumerate(m.algebra.quiver.arrows):
            img = la.mul(m.maps[k], self.bases[a.source], p)
            if not la.contains(self.bases[a.target], img, p):
                return False
        return True

    def __add__(self, other: "Submodule") -> "Submodule":
        p = self.ambient.p
        return Submodule(self.ambient, tuple(la.span_sum(a, b, p) for a, b in zip(self.bases, other.bases)))

    def __and__(self, other: "Submodule") -> "Submodule":
        p = self.ambient.p
        return Submodule(self.ambient, tuple(la.intersect(a, b, p) for a, b in zip(self.bases, other.bases)))

    def as_rep(self) -> Representation:
        m, p = self.ambient, self.ambient.p
        maps = []
        for k, a in enumerate(m.algebra.quiver.arrows):
            img = la.mul(m.maps[k], self.bases[a.source], p)
            maps.append(la.coordinates(self.bases[a.target], img, p))
        return Representation(m.algebra, self.dims, maps, check=False)

    def inclusion(self) -> ModuleMap:
        return ModuleMap(self.as_rep(), self.ambient, self.bases)

    def quotient(self) -> Representation:
        return self.projection().target

    def projection(self) -> ModuleMap:
        m, p = self.ambient, self.ambient.p
        proj = [la.quotient_projection(b, p) for b in self.bases]
        sect = [la.complement(b, p) for b in self.bases]
        maps = []
        for k, a in enumerate(m.algebra.quiver.arrows):
            maps.append(la.mul(proj[a.target], la.mul(m.maps[k], sect[a.source], p), p))
        q = Representation(m.algebra, [x.shape[0] for x in proj], maps, check=False)
        return ModuleMap(m, q, tuple(proj))

    def restrict(self, sub: "Submodule") -> "Submodule":
        """A submodule of ``self`` given in ambient coordinates, re-expressed inside ``self.as_rep()``."""
        p = self.ambient.p
        return Submodule(self.as_rep(), tuple(la.span(la.coordinates(b, s, p), p) for b, s in zip(self.bases, sub.bases)))


def whole(m: Representation) -> Submodule:
    return Submodule(m, tuple(la.identity(d) for d in m.dims))


def zero_sub(m: Representation) -> Submodule:
    return Submodule(m, tuple(la.zeros(d, 0) for d in m.dims))


def generated_submodule(m: Representation, vectors) -> Submodule:
    """Smallest submodule containing the given ``(vertex, vector)`` pairs."""
    p = m.p
    bases = [la.zeros(d, 0) for d in m.dims]
    todo = [(i, np.asarray(v, dtype=la.DTYPE).reshape(-1, 1) % p) for i, v in vectors]
    arrows = m.algebra.quiver.arrows
    while todo:
        i, v = todo.pop()
        if la.contains(bases[i], v, p):
            continue
        bases[i] = la.span_sum(bases[i], v, p)
        for k, a in enumerate(arrows):
            if a.source == i and m.dims[a.target]:
                todo.append((a.target, la.mul(m.maps[k], v, p)))
    return Submodule(m, bases)


# --- standard modules ----------------------------------------------------


def zero_module(algebra: BoundAlgebra) -> Representation:
    return Representation(algebra, [0] * algebra.n, check=False)


def simple(algebra: BoundAlgebra, vertex: int) -> Representation:
    dims = [0] * algebra.n
    dims[vertex] = 1
    return Representation(algebra, dims, check=False)


def _projective_layout(algebra: BoundAlgebra, i: int):
    q = algebra.quiver
    by_vertex: dict = {j: [] for j in range(algebra.n)}
    for w in algebra.paths_from(i):
        by_vertex[q.target(w, i)].append(w)
    pos = {w: (j, k) for j, ws in by_vertex.items() for k, w in enumerate(ws)}
    return by_vertex, pos


def projective(algebra: BoundAlgebra, vertex: int) -> Representation:
    """``P(i) = Lambda e_i``; arrows act by appending to paths, then normal form."""
    cache = algebra.caches.setdefault("projectives", {})
    if vertex in cache:
        return cache[vertex]
    q, p = algebra.quiver, algebra.p
    by_vertex, pos = _projective_layout(algebra, vertex)
    dims = [len(by_vertex[j]) for j in range(algebra.n)]
    maps = []
    for b, arrow in enumerate(q.arrows):
        m = la.zeros(dims[arrow.target], dims[arrow.source])
        for col, w in enumerate(by_vertex[arrow.source]):
            for v, c in algebra.normal_form({w + (b,): 1}).items():
                m[pos[v][1], col] = (m[pos[v][1], col] + c) % p
        maps.append(m)
    rep = Representation(algebra, dims, maps, check=False)
    cache[vertex] = rep
    return rep


def regular_module(algebra: BoundAlgebra) -> Representation:
    return direct_sum(*[projective(algebra, i) for i in range(algebra.n)])


def direct_sum(*mods: Representation) -> Representation:
    if not mods:
        raise ValueError("direct_sum needs at least one module")
    algebra = mods[0].algebra
    dims = [sum(m.dims[i] for m in mods) for i in range(algebra.n)]
    maps = []
    for k, a in enumerate(algebra.quiver.arrows):
        blocks = [m.maps[k] for m in mods]
        out = la.zeros(dims[a.target], dims[a.source])
        r = c = 0
        for b in blocks:
            out[r : r + b.shape[0], c : c + b.shape[1]] = b
            r += b.shape[0]
            c += b.shape[1]
        maps.append(out)
    return Representation(algebra, dims, maps, check=False)


def power(m: Representation, k: int) -> Representation:
    return direct_sum(*([m] * k)) if k else zero_module(m.algebra)


# --- radical, socle, top -------------------------------------------------


def radical(m: Representation) -> Submodule:
    return radical_of(whole(m))


def radical_of(sub: Submodule) -> Submodule:
    """Sum of arrow images of ``sub``, in ambient coordinates."""
    m, p = sub.ambient, sub.ambient.p
    cols = [[] for _ in m.dims]
    for k, a in enumerate(m.algebra.quiver.arrows):
        if sub.bases[a.source].shape[1]:
            cols[a.target].append(la.mul(m.maps[k], sub.bases[a.source], p))
    bases = [la.span(np.concatenate(c, axis=1), p) if c else la.zeros(d, 0) for c, d in zip(cols, m.dims)]
    return Submodule(m, bases)


def radical_power(m: Representation, k: int) -> Submodule:
    s = whole(m)
    for _ in range(k):
        s = radical_of(s)
    return s


def radical_series(m: Representation) -> list:
    """``[M, rad M, rad^2 M, ..., 0]`` as submodules."""
    out = [whole(m)]
    while not out[-1].is_zero():
        out.append(radical_of(out[-1]))
    return out


def loewy_length(m: Representation) -> int:
    return len(radical_series(m)) - 1


def socle(m: Representation) -> Submodule:
    return socle_preimage(zero_sub(m))


def socle_of(sub: Submodule) -> Submodule:
    """Socle of a submodule: its vectors killed by every arrow."""
    m, p = sub.ambient, sub.ambient.p
    return sub & socle(m)


def socle_preimage(sub: Submodule, vertices=None) -> Submodule:
    """Vectors sent into ``sub`` by every arrow: the preimage of soc(M/sub).

    With ``vertices`` given, only those vertices grow; the others keep ``sub``.
    """
    m, p = sub.ambient, sub.ambient.p
    arrows = m.algebra.quiver.arrows
    bases = []
    for i, d in enumerate(m.dims):
        if vertices is not None and i not in vertices:
            bases.append(sub.bases[i])
            continue
        rows = [la.mul(la.annihilator(sub.bases[a.target], p), m.maps[k], p) for k, a in enumerate(arrows) if a.source == i]
        rows = [r for r in rows if r.shape[0]]
        if not rows:
            bases.append(la.identity(d))
        else:
            bases.append(la.span(la.kernel_basis(np.concatenate(rows, axis=0), p), p))
    return Submodule(m, bases)


def socle_series(m: Representation) -> list:
    """``[0, soc M, soc^2 M, ..., M]``."""
    out = [zero_sub(m)]
    while not out[-1].is_everything():
        out.append(socle_preimage(out[-1]))
    return out


def top(m: Representation) -> Representation:
    return radical(m).quotient()


def top_dims(m: Representation) -> tuple:
    r = radical(m)
    return tuple(a - b for a, b in zip(m.dims, r.dims))


def socle_dims(m: Representation) -> tuple:
    return socle(m).dims


def is_semisimple(m: Representation) -> bool:
    return radical(m).is_zero()


def composition_factors(m: Representation) -> Counter:
    """Multiset of composition factors, keyed by vertex index."""
    return Counter({i: d for i, d in enumerate(m.dims) if d})


def count_factors(m: Representation, vertices) -> int:
    """Number of composition factors (with multiplicity) among the simples at ``vertices``."""
    return sum(m.dims[i] for i in vertices)


# --- homomorphisms -------------------------------------------------------


def _kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # np.kron carries a lot of per-call overhead for the tiny blocks used here
    return (a[:, None, :, None] * b[None, :, None, :]).reshape(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])


def hom_basis(m: Representation, n: Representation) -> list:
    """Basis of Hom(M, N).

    Small systems are solved directly on the matrix entries.  Larger ones go
    through a presentation of M, where a map is fixed by the images of the
    top generators and must kill the generators of the kernel of the cover.
    """
    dense_vars = sum(a * b for a, b in zip(m.dims, n.dims))
    if dense_vars <= DENSE_HOM_LIMIT:
        return _hom_basis_dense(m, n)
    gens = top_generators(m)
    if dense_vars <= 2 * sum(n.dims[v] for v, _ in gens):
        return _hom_basis_dense(m, n)
    return _hom_basis_presented(m, n, gens)


DENSE_HOM_LIMIT = 256
_CHUNK_ROWS = 4096


def _path_images(n: Representation, vertex: int) -> dict:
    """``w -> N(w)`` for every basis path ``w`` of P(vertex)."""
    p = n.p
    out = {(): la.identity(n.dims[vertex])}
    for w in n.algebra.paths_from(vertex):
        if w:
            out[w] = la.mul(n.maps[w[-1]], out[w[:-1]], p)
    return out


def _sub_generators(sub: "Submodule") -> list:
    """Per vertex, columns of ``sub`` spanning it modulo its radical."""
    p = sub.ambient.p
    rad = radical_of(sub)
    out = []
    for r, b in zip(rad.bases, sub.bases):
        if not b.shape[1]:
            out.append(b)
            continue
        _, piv = la.rref(np.concatenate([r, b], axis=1), p)
        out.append(b[:, [c - r.shape[1] for c in piv if c >= r.shape[1]]])
    return out


def _hom_basis_presented(m: Representation, n: Representation, gens=None) -> list:
    alg, p = m.algebra, m.p
    gens = top_generators(m) if gens is None else gens
    if not gens or n.is_zero():
        return []
    _, pi = projective_cover(m)
    relations = _sub_generators(pi.kernel())
    # unknowns: the image in N of each generator of M, stacked
    offs, acc = [], 0
    for v, _ in gens:
        offs.append(acc)
        acc += n.dims[v]
    nvars = acc
    if nvars == 0:
        return []
    images = {v: _path_images(n, v) for v in {v for v, _ in gens}}
    layouts = {v: _projective_layout(alg, v)[0] for v in images}
    # column c of P_j is the path w out of generator g: Phi_j[:, c] = N(w) n_g
    cols: list = [[] for _ in range(alg.n)]
    for g, (v, _) in enumerate(gens):
        for j in range(alg.n):
            for w in layouts[v][j]:
                cols[j].append((g, w))
    # constraints arrive in chunks and are kept row-reduced, so memory stays near
    # rank x nvars however many relations there are
    reduced = la.zeros(0, nvars)
    for j in range(alg.n):
        kj = relations[j]
        if not kj.shape[1] or not n.dims[j]:
            continue
        owners: dict = {}
        for c, (g, _) in enumerate(cols[j]):
            owners.setdefault(g, []).append(c)
        stacks = []
        for g, idx in owners.items():
            v = gens[g][0]
            if n.dims[v]:
                stacks.append((g, v, idx, np.stack([images[v][cols[j][c][1]].reshape(-1) for c in idx])))
        per = max(1, _CHUNK_ROWS // n.dims[j])
        for lo in range(0, kj.shape[1], per):
            part = kj[:, lo : lo + per]
            block = la.zeros(part.shape[1] * n.dims[j], nvars)
            for g, v, idx, stack in stacks:
                e = la.mul(part[idx, :].T, stack, p)  # one row of N_j x N_v entries per relation
                block[:, offs[g] : offs[g] + n.dims[v]] = e.reshape(-1, n.dims[v])
            r, piv = la.rref(np.concatenate([reduced, block], axis=0), p)
            reduced = r[: len(piv)]
    sols = la.kernel_basis(reduced, p) if reduced.shape[0] else la.identity(nvars)
    if not sols.shape[1]:
        return []
    # f_j = Phi_j[:, piv] inv(pi_j[:, piv]) on a set of pivot columns of pi_j
    pivs, invs = [], []
    for j in range(alg.n):
        _, piv = la.rref(pi.blocks[j], p)
        piv = list(piv)[: m.dims[j]]
        pivs.append(piv)
        invs.append(la.inverse(pi.blocks[j][:, piv], p) if piv else la.zeros(0, 0))
    nsol = sols.shape[1]
    per_vertex = []
    for j in range(alg.n):
        if not m.dims[j] or not n.dims[j]:
            per_vertex.append(np.zeros((nsol, n.dims[j], m.dims[j]), dtype=la.DTYPE))
            continue
        # Phi_j restricted to the pivot columns, for all solutions at once
        phi = np.zeros((nsol, n.dims[j], len(pivs[j])), dtype=la.DTYPE)
        for t, c in enumerate(pivs[j]):
            g, w = cols[j][c]
            v = gens[g][0]
            phi[:, :, t] = la.mul(images[v][w], sols[offs[g] : offs[g] + n.dims[v], :], p).T
        bound = len(pivs[j]) * (p - 1) ** 2
        if bound < la._FLOAT_EXACT:
            per_vertex.append(np.mod(phi.astype(np.float64) @ invs[j].astype(np.float64), p).astype(la.DTYPE))
        elif bound <= la._INT64_MAX:
            per_vertex.append((phi @ invs[j]) % p)
        else:
            per_vertex.append(np.stack([la.mul(x, invs[j], p) for x in phi]))
    return [ModuleMap(m, n, tuple(per_vertex[j][k] for j in range(alg.n))) for k in range(nsol)]


def _hom_basis_dense(m: Representation, n: Representation) -> list:
    """Basis of Hom(M, N) from the kernel of the intertwiner equations."""
    p = m.p
    alg = m.algebra
    offs, acc = [], 0
    for i in range(alg.n):
        offs.append(acc)
        acc += n.dims[i] * m.dims[i]
    nvars = acc
    if nvars == 0:
        return []
    rows = []
    for k, a in enumerate(alg.quiver.arrows):
        s, t = a.source, a.target
        ms, mt, ns, nt = m.dims[s], m.dims[t], n.dims[s], n.dims[t]
        if nt * ms == 0:
            continue
        block = la.zeros(nt * ms, nvars)
        if ns * ms:
            # N_a f_s, with f_s stored row-major (ns x ms)
            block[:, offs[s] : offs[s] + ns * ms] += _kron(n.maps[k], la.identity(ms))
        if nt * mt:
            block[:, offs[t] : offs[t] + nt * mt] -= _kron(la.identity(nt), m.maps[k].T)
        rows.append(block % p)
    if rows:
        ker = la.kernel_basis(np.concatenate(rows, axis=0), p)
    else:
        ker = la.identity(nvars)
    out = []
    for j in range(ker.shape[1]):
        col = ker[:, j]
        blocks = tuple(col[offs[i] : offs[i] + n.dims[i] * m.dims[i]].reshape(n.dims[i], m.dims[i]) for i in range(alg.n))
        out.append(ModuleMap(m, n, blocks))
    return out


def hom_dim(m: Representation, n: Representation) -> int:
    return len(hom_basis(m, n))


# --- projective covers and syzygies --------------------------------------


def top_generators(m: Representation) -> list:
    """``(vertex, vector)`` pairs lifting a basis of top M, in canonical order."""
    r = radical(m)
    out = []
    for i, b in enumerate(r.bases):
        c = la.complement(b, m.p)
        for j in range(c.shape[1]):
            out.append((i, c[:, j]))
    return out


def projective_cover(m: Representation) -> tuple:
    """Minimal projective cover ``(P, P -> M)`` generated by lifts of a top basis."""
    alg, p = m.algebra, m.p
    gens = top_generators(m)
    if not gens:
        z = zero_module(alg)
        return z, zero_map(z, m)
    q = alg.quiver
    pieces = [projective(alg, i) for i, _ in gens]
    cover = direct_sum(*pieces)
    cols: list = [[] for _ in range(alg.n)]
    for (i, g), piece in zip(gens, pieces):
        by_vertex, _ = _projective_layout(alg, i)
        images = {(): g.reshape(-1, 1)}
        for w in alg.paths_from(i):
            if w:
                images[w] = la.mul(m.maps[w[-1]], images[w[:-1]], p)
        for j in range(alg.n):
            for w in by_vertex[j]:
                cols[j].append(images[w])
    blocks = tuple(np.concatenate(c, axis=1) if c else la.zeros(m.dims[j], 0) for j, c in enumerate(cols))
    return cover, ModuleMap(cover, m, blocks)


def syzygy(m: Representation) -> Representation:
    if m.is_zero():
        return m
    _, cover = projective_cover(m)
    return cover.kernel().as_rep()


def syzygy_power(m: Representation, n: int) -> Representation:
    if n < 0:
        raise ValueError("syzygy power must be non-negative")
    for _ in range(n):
        if m.is_zero():
            break
        m = syzygy(m)
    return m


def is_projective(m: Representation) -> bool:
    return m.is_zero() or sum(projective_dims_of_cover(m)) == m.dim


def projective_dims_of_cover(m: Representation) -> list:
    dims = m.algebra.projective_dims()
    return [dims[i] for i, _ in top_generators(m)]


# --- duality -------------------------------------------------------------


def dualize(m: Representation) -> Representation:
    """Vector-space dual, a left module over the opposite algebra."""
    op = m.algebra.opposite()
    return Representation(op, m.dims, [x.T.copy() for x in m.maps], check=False)


def relabel(m: Representation, algebra: BoundAlgebra) -> Representation:
    """Same matrices viewed over an algebra with an identical presentation."""
    return Representation(algebra, m.dims, m.maps, check=False)


def change_basis(m: Representation, mats) -> Representation:
    """Isomorphic copy ``g_j M_a g_i^{-1}`` for invertible per-vertex ``mats``."""
    p = m.p
    inv = [la.inverse(g, p) if g.size else g for g in mats]
    maps = []
    for k, a in enumerate(m.algebra.quiver.arrows):
        maps.append(la.mul(mats[a.target], la.mul(m.maps[k], inv[a.source], p), p))
    return Representation(m.algebra, m.dims, maps, check=False)


def injective(algebra: BoundAlgebra, vertex: int) -> Representation:
    """Indecomposable injective ``I(vertex) = D P_op(vertex)``."""
    return dualize(projective(algebra.opposite(), vertex))
