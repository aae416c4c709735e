"""Krull-Schmidt decomposition, isomorphism testing and the iso-class registry.

A module is split along the primary decomposition of an endomorphism whose
minimal polynomial has two coprime factors (Fitting).  A module is accepted
as indecomposable only with a certificate: a nilpotent two-sided ideal ``J``
of its endomorphism ring such that ``End/J`` is a field.  ``J`` is computed
with the trace criterion for algebras of matrices over a prime field
(iterated kernels of the functionals ``x -> Tr(lift(x)^{p^i}) / p^i``).
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field

import numpy as np
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_factor

from . import linalg as la
from .modules import (
    ModuleMap,
    Representation,
    Submodule,
    direct_sum,
    hom_basis,
    is_projective,
    radical,
    simple,
    socle,
    socle_dims,
    syzygy,
    top_dims,
    zero_module,
)

SEED = 20240607
EXHAUSTIVE_LIMIT = 2**12
RANDOM_TRIALS = 256
QUICK_BASIS = 12
QUICK_RANDOM = 4


class DecompositionError(RuntimeError):
    pass


# --- polynomials over GF(p), coefficient lists low -> high --------------------

def _factor(coeffs: list, p: int) -> list:
    """Monic irreducible factors with multiplicities, ``[(coeffs, e), ...]``."""
    _, facs = gf_factor([c % p for c in reversed(coeffs)], p, ZZ)
    out = [([int(x) for x in reversed(f)], e) for f, e in facs]
    out.sort()
    return out


def _poly_mul(a: list, b: list, p: int) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return out


def _poly_pow(a: list, e: int, p: int) -> list:
    out = [1]
    for _ in range(e):
        out = _poly_mul(out, a, p)
    return out


def _eval_poly(coeffs: list, x: np.ndarray, p: int) -> np.ndarray:
    n = x.shape[0]
    acc = la.zeros(n, n)
    for c in reversed(coeffs):
        acc = (la.mul(acc, x, p) + c * la.identity(n)) % p
    return acc


def _vector_minpoly(x: np.ndarray, v: np.ndarray, p: int) -> list:
    """Monic polynomial of least degree killing ``v`` under ``x``."""
    krylov = [v]
    while True:
        w = la.mul(x, krylov[-1].reshape(-1, 1), p).reshape(-1)
        sol = la.solve(np.stack(krylov, axis=1), w, p)
        if sol is not None:
            return [int(-c) % p for c in sol] + [1]
        krylov.append(w)


def minimal_polynomial(x: np.ndarray, p: int) -> list:
    """Minimal polynomial of a square matrix, monic, low -> high.

    Built as the lcm of the annihilators of the unit vectors: if ``mp`` kills
    the first vectors, the annihilator of ``mp(x) e_i`` is the missing factor.
    """
    n = x.shape[0]
    mp = [1]
    cur = la.identity(n)  # mp(x)
    for i in range(n):
        w = cur[:, i]
        if not w.any():
            continue
        q = _vector_minpoly(x, w, p)
        mp = _poly_mul(mp, q, p)
        cur = la.mul(_eval_poly(q, x, p), cur, p)
    return mp


# --- endomorphism algebras -------------------------------------------------


class EndAlgebra:
    """End(M) as an algebra of block-diagonal matrices on the total space of M."""

    def __init__(self, m: Representation, maps: list | None = None):
        self.module = m
        self.p = m.p
        self.maps = hom_basis(m, m) if maps is None else maps
        self.mats = [f.total() for f in self.maps]
        self.n = m.dim
        self.dim = len(self.mats)
        self.flat = np.stack([x.reshape(-1) for x in self.mats], axis=1) if self.mats else la.zeros(self.n**2, 0)

    def coords(self, x: np.ndarray) -> np.ndarray:
        c = la.solve(self.flat, x.reshape(-1), self.p)
        if c is None:
            raise DecompositionError("matrix is not an endomorphism")
        return c

    def combine(self, c) -> np.ndarray:
        return (la.mul(self.flat, np.asarray(c, dtype=la.DTYPE).reshape(-1, 1), self.p)).reshape(self.n, self.n)

    def radical(self) -> np.ndarray:
        """Coefficient columns spanning the Jacobson radical."""
        p, n = self.p, self.n
        basis = la.identity(self.dim)
        level = 0
        while p**level <= n:
            if basis.shape[1] == 0:
                break
            mod = p ** (level + 1)
            elems = [self.combine(basis[:, k]) for k in range(basis.shape[1])]
            if level == 0:
                # Tr(x b) = <vec x, vec b^T>
                flat_t = np.stack([b.T.reshape(-1) for b in self.mats], axis=1)
                g = la.mul(np.stack([x.reshape(-1) for x in elems]), flat_t, p)
            else:
                g = la.zeros(len(elems), self.dim)
                for k, x in enumerate(elems):
                    for j, b in enumerate(self.mats):
                        g[k, j] = _trace_functional(la.mul(x, b, p), level, p, mod)
            # kernel on the left: combos of current basis killed by every functional
            left = la.kernel_basis(g.T % p, p)
            basis = la.span(la.mul(basis, left, p), p) if left.shape[1] else la.zeros(self.dim, 0)
            level += 1
        return basis

    def quotient_complement(self, rad: np.ndarray) -> np.ndarray:
        return la.complement(rad, self.p)


def _trace_functional(x: np.ndarray, level: int, p: int, mod: int) -> int:
    if level == 0:
        return int(np.trace(x)) % p
    y = x % mod
    e = p**level
    acc = None
    base = y
    while e:
        if e & 1:
            acc = base if acc is None else (acc @ base) % mod
        e >>= 1
        if e:
            base = (base @ base) % mod
    tr = int(np.trace(acc)) % mod
    if tr % (p**level):
        raise DecompositionError("trace functional not divisible; radical computation failed")
    return (tr // p**level) % p


def _is_nilpotent_ideal(alg: EndAlgebra, rad: np.ndarray) -> bool:
    p, n = alg.p, alg.n
    if rad.shape[1] == 0:
        return True
    elems = [alg.combine(rad[:, k]) for k in range(rad.shape[1])]
    flat = la.span(np.stack([x.reshape(-1) for x in elems], axis=1), p)
    ann = la.annihilator(flat, p)
    prods = [la.mul(x, b, p) for x in elems for b in alg.mats] + [la.mul(b, x, p) for x in elems for b in alg.mats]
    stacked = np.stack([q.reshape(-1) for q in prods], axis=1)
    if la.mul(ann, stacked, p).any():
        return False
    # products of n elements of J vanish iff J^n = 0; check via iterated span
    cur = elems
    for _ in range(n + 1):
        if not cur:
            return True
        nxt = [la.mul(a, b, p) for a in cur for b in elems]
        nxt = [x for x in nxt if x.any()]
        if not nxt:
            return True
        sp = la.span(np.stack([x.reshape(-1) for x in nxt], axis=1), p)
        cur = [sp[:, k].reshape(n, n) for k in range(sp.shape[1])]
    return False


@dataclass
class LocalityCertificate:
    end_dim: int
    radical_dim: int
    residue_degree: int


def _quotient_minpoly(alg: EndAlgebra, x: np.ndarray, rad_flat: np.ndarray) -> list:
    """Minimal polynomial of the image of ``x`` in End/J."""
    p, n = alg.p, alg.n
    powers = [la.identity(n).reshape(-1)]
    cur = la.identity(n)
    for _ in range(alg.dim + 1):
        cur = la.mul(cur, x, p)
        basis = np.concatenate([np.stack(powers, axis=1), rad_flat], axis=1)
        sol = la.solve(basis, cur.reshape(-1), p)
        if sol is not None:
            return [int(-c) % p for c in sol[: len(powers)]] + [1]
        powers.append(cur.reshape(-1))
    raise DecompositionError("minimal polynomial in End/J not found")


def _candidates(alg: EndAlgebra, comp: np.ndarray, rng: random.Random):
    """Elements of End(M) whose images span End/J: basis, pairs, then random."""
    p = alg.p
    k = comp.shape[1]
    vecs = [comp[:, j] for j in range(k)]
    for v in vecs:
        yield v
    for a, b in itertools.combinations(range(k), 2):
        yield (vecs[a] + vecs[b]) % p
    if p**k <= EXHAUSTIVE_LIMIT:
        for coeffs in itertools.product(range(p), repeat=k):
            if any(coeffs):
                yield la.mul(comp, np.array(coeffs, dtype=la.DTYPE).reshape(-1, 1), p).reshape(-1)
    else:
        for _ in range(RANDOM_TRIALS):
            coeffs = np.array([rng.randrange(p) for _ in range(k)], dtype=la.DTYPE).reshape(-1, 1)
            yield la.mul(comp, coeffs, p).reshape(-1)


def _quick_candidates(alg: EndAlgebra, rng: random.Random):
    """Basis endomorphisms and a few random combinations, tried before any radical work."""
    p = alg.p
    for x in alg.mats[:QUICK_BASIS]:
        yield x
    for _ in range(QUICK_RANDOM):
        c = [rng.randrange(p) for _ in range(alg.dim)]
        yield alg.combine(c)


def split_or_certify(m: Representation, rng: random.Random | None = None, maps: list | None = None):
    """Either a tuple of submodules whose direct sum is M (at least two), or a LocalityCertificate.

    ``maps`` may carry a known basis of End(M).
    """
    p = m.p
    rng = rng or random.Random(SEED)
    alg = EndAlgebra(m, maps)
    if alg.dim == 1:
        # End(M) = k
        return LocalityCertificate(1, 0, 1)
    if alg.dim > 1:
        for x in _quick_candidates(alg, rng):
            if len(_factor(minimal_polynomial(x, p), p)) >= 2:
                return _fitting_split(m, x)
    rad = alg.radical()
    if not _is_nilpotent_ideal(alg, rad):
        raise DecompositionError("computed radical of End(M) is not a nilpotent ideal")
    if alg.dim - rad.shape[1] == 1:
        return LocalityCertificate(alg.dim, rad.shape[1], 1)
    # rad is in canonical column form; coordinates of End/J use the free pivots
    comp = alg.quotient_complement(rad)
    rad_flat = la.mul(alg.flat, rad, p) if rad.shape[1] else la.zeros(alg.n**2, 0)
    residue = alg.dim - rad.shape[1]
    for c in _candidates(alg, comp, rng):
        x = alg.combine(c)
        qmin = _quotient_minpoly(alg, x, rad_flat)
        facs = _factor(qmin, p)
        if len(facs) >= 2:
            return _fitting_split(m, x)
        if len(facs) == 1 and facs[0][1] == 1 and len(qmin) - 1 == residue:
            return LocalityCertificate(alg.dim, rad.shape[1], residue)
    raise DecompositionError(
        f"decomposition uncertified: End(M) has dim {alg.dim}, radical {rad.shape[1]}; no splitting element or field generator found"
    )


def _fitting_split(m: Representation, x: np.ndarray):
    """Primary components ``ker f_i(x)^e_i`` of ``M`` for the factors of the minimal polynomial."""
    p = m.p
    facs = _factor(minimal_polynomial(x, p), p)
    if len(facs) < 2:
        raise DecompositionError("endomorphism does not split the module")
    offs = m.offsets()

    def kernel_sub(poly):
        y = _eval_poly(poly, x, p)
        bases = []
        for i, d in enumerate(m.dims):
            block = y[offs[i] : offs[i] + d, offs[i] : offs[i] + d]
            bases.append(la.span(la.kernel_basis(block, p), p))
        return Submodule(m, bases)

    parts = [kernel_sub(_poly_pow(f, e, p)) for f, e in facs]
    if sum(u.dim for u in parts) != m.dim or any(u.is_zero() for u in parts):
        raise DecompositionError("Fitting split failed")
    return tuple(parts)


_END_BATCH = 256


def restricted_end(parts, maps: list) -> list:
    """``(U_i, End basis of U_i)`` for the summands ``parts`` of X, from a basis ``maps`` of End(X).

    With X = U_1 + ... + U_k, End(U_i) is spanned by the diagonal blocks
    e_i f i_i of the basis elements f, so no new linear system is solved.
    """
    x = parts[0].ambient
    p = x.p
    n = x.algebra.n
    if not maps:
        raise DecompositionError("empty endomorphism basis")
    out = []
    flats = [[] for _ in parts]
    for j in range(n):
        basis = np.concatenate([u.bases[j] for u in parts], axis=1)
        d = basis.shape[0]
        if d == 0:
            for f in flats:
                f.append(np.zeros((len(maps), 0), dtype=la.DTYPE))
            continue
        inv = la.inverse(basis, p)
        pieces: list = [[] for _ in parts]
        for lo_m in range(0, len(maps), _END_BATCH):
            stacked = np.stack([f.blocks[j] for f in maps[lo_m : lo_m + _END_BATCH]])
            conj = _right_mul(_left_mul(inv, stacked, p), basis, p)
            lo = 0
            for i, u in enumerate(parts):
                k = u.dims[j]
                pieces[i].append(conj[:, lo : lo + k, lo : lo + k].reshape(len(stacked), -1))
                lo += k
        for i in range(len(parts)):
            flats[i].append(np.concatenate(pieces[i], axis=0))
    for i, u in enumerate(parts):
        mat = np.concatenate(flats[i], axis=1)
        r, piv = la.rref(mat, p)
        rows = r[: len(piv)]
        rep = u.as_rep()
        basis = []
        for row in rows:
            blocks, lo = [], 0
            for j in range(n):
                k = u.dims[j]
                blocks.append(row[lo : lo + k * k].reshape(k, k))
                lo += k * k
            basis.append(ModuleMap(rep, rep, tuple(blocks)))
        out.append((rep, basis))
    return out


def _right_mul(stacked: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """``y @ b`` for every matrix ``y`` in ``stacked``, mod p."""
    e, r, d = stacked.shape
    return la.mul(stacked.reshape(e * r, d), b, p).reshape(e, r, b.shape[1])


def _left_mul(a: np.ndarray, stacked: np.ndarray, p: int) -> np.ndarray:
    """``a @ y`` for every matrix ``y`` in ``stacked``, mod p."""
    e, d, c = stacked.shape
    flat = stacked.transpose(1, 0, 2).reshape(d, e * c)
    return la.mul(a, flat, p).reshape(a.shape[0], e, c).transpose(1, 0, 2)


def peel_simples(m: Representation) -> tuple:
    """``(counts, rest)``: simple summands per vertex and a complement of them.

    A socle vector outside rad M spans a simple summand; any subspace that
    contains rad M is a submodule, so a complement comes for free.
    """
    p = m.p
    rad, soc = radical(m), socle(m)
    counts, bases = [], []
    for r, s_ in zip(rad.bases, soc.bases):
        both = la.span_sum(r, s_, p)
        counts.append(both.shape[1] - r.shape[1])
        bases.append(la.span_sum(r, la.complement(both, p), p))
    return counts, Submodule(m, bases)


def decompose_module(m: Representation, rng: random.Random | None = None) -> list:
    """Indecomposable summands of ``m`` (as representations), each certified local."""
    rng = rng or random.Random(SEED)
    if m.is_zero():
        return []
    out = []
    counts, rest = peel_simples(m)
    if any(counts):
        for v, k in enumerate(counts):
            out += [simple(m.algebra, v)] * k
        if rest.is_zero():
            return out
        m = rest.as_rep()
    stack = [(m, None)]
    while stack:
        x, maps = stack.pop()
        if maps is None:
            maps = hom_basis(x, x)
        res = split_or_certify(x, rng, maps)
        if isinstance(res, LocalityCertificate):
            out.append(x)
        else:
            stack.extend(reversed(restricted_end(res, maps)))
    return out


def _invertible(f: ModuleMap) -> bool:
    return all(b.shape[0] == b.shape[1] and la.rank(b, f.p) == b.shape[0] for b in f.blocks)


def indecomposables_isomorphic(x: Representation, y: Representation) -> ModuleMap | None:
    """An isomorphism between indecomposables, or None.

    End(X) is local, so the non-units form an ideal and it suffices to test
    products of basis elements of Hom(X, Y) and Hom(Y, X).
    """
    if x.dims != y.dims:
        return None
    if x.is_zero():
        return ModuleMap(x, y, tuple(la.zeros(0, 0) for _ in x.dims))
    fs = hom_basis(x, y)
    if not fs:
        return None
    gs = hom_basis(y, x)
    for f in fs:
        if _invertible(f):
            return f
    for f in fs:
        for g in gs:
            if _invertible(g.compose(f)):
                return f
    return None


def is_isomorphic(m: Representation, n: Representation, registry: "IsoRegistry | None" = None) -> bool:
    """Krull-Schmidt comparison of certified decompositions."""
    if m.dims != n.dims:
        return False
    if m.is_zero():
        return True
    reg = registry or IsoRegistry(m.algebra)
    return reg.register(m) == reg.register(n)


# --- registry ----------------------------------------------------------------


@dataclass
class IsoClass:
    id: int
    rep: Representation
    projective: bool
    end_dim: int
    invariants: tuple
    syzygy: Counter | None = None  # non-projective summand classes of the syzygy


@dataclass(frozen=True)
class Decomposition:
    """Multiset of indecomposable classes, stored as sorted ``(class_id, multiplicity)``."""

    items: tuple
    projective: frozenset = frozenset()

    @classmethod
    def from_counter(cls, counter: Counter, projective=()) -> "Decomposition":
        return cls(tuple(sorted((k, v) for k, v in counter.items() if v)), frozenset(projective))

    def counter(self) -> Counter:
        return Counter(dict(self.items))

    def classes(self) -> list:
        return [k for k, _ in self.items]

    def non_projective(self) -> Counter:
        return Counter({k: v for k, v in self.items if k not in self.projective})

    def __len__(self) -> int:
        return sum(v for _, v in self.items)


class IsoRegistry:
    """Catalog of indecomposable iso-classes for one algebra (single writer)."""

    def __init__(self, algebra, seed: int = SEED):
        self.algebra = algebra
        self.classes: list = []
        self._by_invariant: dict = {}
        self._memo: dict = {}
        self.rng = random.Random(seed)

    def __len__(self) -> int:
        return len(self.classes)

    def _invariants(self, x: Representation) -> tuple:
        """Cheap iso invariants: dimension vectors and ranks of short path actions."""
        ranks = tuple(
            la.rank(x.path_matrix(w, i), x.p) if x.dims[i] else 0
            for i, w in self.algebra.path_basis
            if 1 <= len(w) <= 3
        )
        return (x.dims, top_dims(x), socle_dims(x), ranks)

    def lookup(self, x: Representation) -> int | None:
        inv = self._invariants(x)
        for cid in self._by_invariant.get(inv, []):
            if indecomposables_isomorphic(x, self.classes[cid].rep) is not None:
                return cid
        return None

    def add_indecomposable(self, x: Representation, end_dim: int | None = None) -> int:
        """Class id of an indecomposable ``x`` (caller guarantees indecomposability)."""
        cid = self.lookup(x)
        if cid is not None:
            return cid
        inv = self._invariants(x)
        cid = len(self.classes)
        if end_dim is None:
            end_dim = len(hom_basis(x, x))
        self.classes.append(IsoClass(cid, x, is_projective(x), end_dim, inv))
        self._by_invariant.setdefault(inv, []).append(cid)
        return cid

    def register(self, m: Representation) -> Decomposition:
        key = m.key()
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        counter: Counter = Counter()
        for piece in decompose_module(m, self.rng):
            counter[self.add_indecomposable(piece)] += 1
        proj = [c for c in counter if self.classes[c].projective]
        dec = Decomposition.from_counter(counter, proj)
        self._memo[key] = dec
        return dec

    def rep(self, cid: int) -> Representation:
        return self.classes[cid].rep

    def is_projective(self, cid: int) -> bool:
        return self.classes[cid].projective

    def syzygy_classes(self, cid: int) -> Counter:
        """Non-projective indecomposable summands of the syzygy of a class."""
        cls = self.classes[cid]
        if cls.syzygy is None:
            if cls.projective:
                cls.syzygy = Counter()
            else:
                cls.syzygy = self.register(syzygy(cls.rep)).non_projective()
        return cls.syzygy

    def rebuild(self, dec: Decomposition) -> Representation:
        pieces = [self.classes[c].rep for c, k in dec.items for _ in range(k)]
        return direct_sum(*pieces) if pieces else zero_module(self.algebra)

    # --- persistence ------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "classes": [
                {
                    "rep": c.rep.to_dict(),
                    "projective": c.projective,
                    "end_dim": c.end_dim,
                    "syzygy": None if c.syzygy is None else sorted(c.syzygy.items()),
                }
                for c in self.classes
            ]
        }

    def load_dict(self, data: dict) -> None:
        """Restore classes saved by ``to_dict`` into an empty registry."""
        if self.classes:
            raise ValueError("registry already populated")
        for entry in data["classes"]:
            x = Representation.from_dict(self.algebra, entry["rep"])
            cid = len(self.classes)
            inv = self._invariants(x)
            self.classes.append(IsoClass(cid, x, entry["projective"], entry["end_dim"], inv))
            self._by_invariant.setdefault(inv, []).append(cid)
        for cls, entry in zip(self.classes, data["classes"]):
            if entry["syzygy"] is not None:
                cls.syzygy = Counter({int(k): int(v) for k, v in entry["syzygy"]})


def registry_for(algebra) -> IsoRegistry:
    """The session registry attached to an algebra."""
    reg = algebra.caches.get("registry")
    if reg is None:
        reg = IsoRegistry(algebra)
        algebra.caches["registry"] = reg
    return reg


def decompose(m: Representation, registry: IsoRegistry | None = None) -> Decomposition:
    return (registry or registry_for(m.algebra)).register(m)


def register(m: Representation) -> Decomposition:
    return registry_for(m.algebra).register(m)
