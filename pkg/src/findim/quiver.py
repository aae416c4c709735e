"""Quivers, admissible relations and bound quiver algebras kQ/I.

Path convention: a path is the tuple of arrow indices in the order they are
traversed, so ``(a, b)`` means "first ``a``, then ``b``" and requires
``target(a) == source(b)``.  The trivial path at a vertex is the empty tuple
together with that vertex.  This is the convention under which relations such
as ``alpha*beta`` (alpha: 1 -> 1, beta: 1 -> 2) are well formed.

Paths are ordered by length first, then lexicographically by arrow
declaration order; the leading term of a relation is its largest path.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .linalg import check_prime

Path = tuple  # tuple[int, ...] of arrow indices


class AdmissibilityError(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple  # of Arrow, indices refer to ``vertices``

    @classmethod
    def from_labels(cls, vertices, arrows) -> "Quiver":
        """Build from vertex labels and ``(name, source_label, target_label)`` triples."""
        vertices = tuple(str(v) for v in vertices)
        if len(set(vertices)) != len(vertices):
            raise ValueError("duplicate vertex label")
        index = {v: i for i, v in enumerate(vertices)}
        out = []
        for name, s, t in arrows:
            s, t = str(s), str(t)
            if s not in index or t not in index:
                raise ValueError(f"arrow {name!r} refers to an undeclared vertex")
            out.append(Arrow(str(name), index[s], index[t]))
        if len({a.name for a in out}) != len(out):
            raise ValueError("duplicate arrow label")
        return cls(vertices, tuple(out))

    @property
    def n(self) -> int:
        return len(self.vertices)

    def vertex_index(self, label) -> int:
        try:
            return self.vertices.index(str(label))
        except ValueError:
            raise KeyError(f"unknown vertex {label!r}") from None

    def arrow_index(self, name: str) -> int:
        for k, a in enumerate(self.arrows):
            if a.name == name:
                return k
        raise KeyError(f"unknown arrow {name!r}")

    def source(self, path: Path, start: int | None = None) -> int:
        return self.arrows[path[0]].source if path else start

    def target(self, path: Path, start: int | None = None) -> int:
        return self.arrows[path[-1]].target if path else start

    def is_path(self, path: Path) -> bool:
        return all(self.arrows[a].target == self.arrows[b].source for a, b in zip(path, path[1:]))

    def parse_path(self, text: str) -> Path:
        """``"a*b*c"`` -> arrow index tuple."""
        names = [t.strip() for t in text.split("*")]
        path = tuple(self.arrow_index(t) for t in names)
        if not self.is_path(path):
            raise ValueError(f"{text!r} is not a path (arrows do not compose)")
        return path

    def path_str(self, path: Path, start: int | None = None) -> str:
        if not path:
            return f"e{self.vertices[start]}" if start is not None else "e"
        return "*".join(self.arrows[a].name for a in path)

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, tuple(Arrow(a.name, a.target, a.source) for a in self.arrows))


def path_key(path: Path) -> tuple:
    return (len(path), path)


@dataclass(frozen=True)
class Relation:
    """Linear combination of parallel paths, ``{path: coefficient}``."""

    terms: tuple  # sorted ((path, coeff), ...)

    @classmethod
    def from_dict(cls, terms: dict, p: int) -> "Relation":
        clean = {tuple(w): c % p for w, c in terms.items() if c % p}
        return cls(tuple(sorted(clean.items(), key=lambda t: path_key(t[0]))))

    def as_dict(self) -> dict:
        return dict(self.terms)

    def reversed(self) -> "Relation":
        return Relation(tuple(sorted(((w[::-1], c) for w, c in self.terms), key=lambda t: path_key(t[0]))))


# --- noncommutative polynomial helpers -----------------------------------


def _leading(poly: dict) -> Path:
    return max(poly, key=path_key)


def _monic(poly: dict, p: int) -> dict:
    lead = poly[_leading(poly)]
    inv = pow(lead, -1, p)
    return {w: (c * inv) % p for w, c in poly.items()}


def _add_into(acc: dict, other: dict, scale: int, p: int, left: Path = (), right: Path = ()) -> None:
    for w, c in other.items():
        key = left + w + right
        v = (acc.get(key, 0) + scale * c) % p
        if v:
            acc[key] = v
        else:
            acc.pop(key, None)


class _Reducer:
    """Rewriting by a set of monic polynomials keyed by their leading paths."""

    def __init__(self, p: int):
        self.p = p
        self.rules: dict = {}  # leading path -> tail (poly without leading term, negated)
        self.lengths: set = set()

    def add(self, poly: dict) -> None:
        lt = _leading(poly)
        tail = {w: (-c) % self.p for w, c in poly.items() if w != lt}
        self.rules[lt] = tail
        self._refresh()

    def remove(self, lt: Path) -> None:
        del self.rules[lt]
        self._refresh()

    def _refresh(self) -> None:
        self.lengths = sorted({len(w) for w in self.rules})

    def find(self, w: Path):
        for ln in self.lengths:
            if ln > len(w):
                break
            for i in range(len(w) - ln + 1):
                sub = w[i : i + ln]
                if sub in self.rules:
                    return i, sub
        return None

    def reduce(self, poly: dict) -> dict:
        work = dict(poly)
        out: dict = {}
        while work:
            w = _leading(work)
            c = work.pop(w)
            hit = self.find(w)
            if hit is None:
                out[w] = c
                continue
            i, sub = hit
            _add_into(work, self.rules[sub], c, self.p, w[:i], w[i + len(sub) :])
        return out


def groebner_basis(relations: list, p: int, max_len: int) -> list:
    """Reduced noncommutative Groebner basis, completing overlaps up to ``max_len``.

    Each returned element is a monic dict ``{path: coeff}``.
    """
    red = _Reducer(p)
    pending = [dict(r.as_dict()) for r in relations if r.terms]
    basis: list = []

    def insert(poly: dict) -> bool:
        poly = red.reduce(poly)
        if not poly:
            return False
        poly = _monic(poly, p)
        red.add(poly)
        basis.append(poly)
        return True

    for r in pending:
        insert(r)
    _interreduce(basis, red, p)

    done: set = set()
    while True:
        new = False
        lts = [_leading(g) for g in basis]
        for gi, u in enumerate(lts):
            for hi, v in enumerate(lts):
                for k in range(1, min(len(u), len(v))):
                    if u[-k:] != v[:k] or len(u) + len(v) - k > max_len:
                        continue
                    key = (u, v, k)
                    if key in done:
                        continue
                    done.add(key)
                    g, h = basis[gi], basis[hi]
                    s: dict = {}
                    _add_into(s, g, 1, p, (), v[k:])
                    _add_into(s, h, -1, p, u[:-k], ())
                    if insert(s):
                        new = True
                        break
                if new:
                    break
            if new:
                break
        if not new:
            break
        _interreduce(basis, red, p)
    return sorted(basis, key=lambda g: path_key(_leading(g)))


def _interreduce(basis: list, red: _Reducer, p: int) -> None:
    changed = True
    while changed:
        changed = False
        for idx, g in enumerate(list(basis)):
            lt = _leading(g)
            red.remove(lt)
            r = red.reduce(g)
            if r == g:
                red.add(g)
                continue
            changed = True
            basis.pop(idx)
            if r:
                r = _monic(r, p)
                red.add(r)
                basis.append(r)
            break


class BoundAlgebra:
    """Finite-dimensional algebra kQ/I over GF(p) with Groebner normal forms.

    Left modules are quiver representations; the indecomposable projective
    ``P(i) = Lambda e_i`` has the irreducible paths starting at ``i`` as basis.
    """

    def __init__(self, quiver: Quiver, relations, p: int = 2, max_len: int = 20):
        self.p = check_prime(p)
        self.quiver = quiver
        rels = []
        for r in relations:
            if not isinstance(r, Relation):
                r = Relation.from_dict(r, self.p)
            _check_relation(quiver, r)
            rels.append(r)
        self.relations = tuple(rels)
        self.max_len = max_len
        self.groebner = groebner_basis(list(self.relations), self.p, max_len)
        self._red = _Reducer(self.p)
        for g in self.groebner:
            self._red.add(g)
        self._nf_cache: dict = {}
        self._paths_from = self._enumerate_basis()
        self._check_nilpotent()
        self.caches: dict = {}  # session-scoped memo tables (registry, classification)

    def __repr__(self) -> str:
        return f"BoundAlgebra(vertices={list(self.quiver.vertices)}, arrows={len(self.quiver.arrows)}, dim={self.dim}, p={self.p})"

    # --- basis ---------------------------------------------------------------

    def _enumerate_basis(self) -> dict:
        q = self.quiver
        out = {i: [()] for i in range(q.n)}
        frontier = [(a,) for a in range(len(q.arrows)) if (a,) not in self._red.rules]
        length = 1
        while frontier:
            if length >= self.max_len:
                raise AdmissibilityError(
                    f"ideal not admissible within bound: irreducible path of length {length} "
                    f"({q.path_str(frontier[0])})"
                )
            for w in frontier:
                out[q.source(w)].append(w)
            nxt = []
            for w in frontier:
                for b, arrow in enumerate(q.arrows):
                    if arrow.source != q.target(w):
                        continue
                    cand = w + (b,)
                    if not self._has_rule_suffix(cand):
                        nxt.append(cand)
            frontier = nxt
            length += 1
        self.nilpotency_bound = length
        for i in out:
            out[i].sort(key=path_key)
        return out

    def _has_rule_suffix(self, w: Path) -> bool:
        return any(w[len(w) - ln :] in self._red.rules for ln in self._red.lengths if ln <= len(w))

    def _check_nilpotent(self) -> None:
        homogeneous = all(len({len(w) for w, _ in r.terms}) == 1 for r in self.relations)
        if homogeneous:
            return
        # lower-order terms could survive; check every path of the bound length
        q = self.quiver
        L = self.nilpotency_bound
        stack = [(a,) for a in range(len(q.arrows))]
        while stack:
            w = stack.pop()
            if len(w) == L:
                if self.normal_form({w: 1}):
                    raise AdmissibilityError(f"path {q.path_str(w)} does not vanish in the quotient")
                continue
            for b, arrow in enumerate(q.arrows):
                if arrow.source == q.target(w):
                    stack.append(w + (b,))

    @property
    def n(self) -> int:
        return self.quiver.n

    def paths_from(self, i: int) -> list:
        return self._paths_from[i]

    @cached_property
    def path_basis(self) -> list:
        """All irreducible paths as ``(start_vertex, path)`` pairs."""
        return [(i, w) for i in range(self.n) for w in self._paths_from[i]]

    @property
    def dim(self) -> int:
        return len(self.path_basis)

    def projective_dims(self) -> list:
        return [len(self._paths_from[i]) for i in range(self.n)]

    # --- arithmetic --------------------------------------------------------------

    def normal_form(self, x: dict) -> dict:
        """Normal form of a linear combination of nontrivial paths."""
        out: dict = {}
        for w, c in x.items():
            c %= self.p
            if not c:
                continue
            w = tuple(w)
            nf = self._nf_path(w)
            _add_into(out, nf, c, self.p)
        return out

    def _nf_path(self, w: Path) -> dict:
        hit = self._nf_cache.get(w)
        if hit is None:
            hit = self._red.reduce({w: 1}) if w else {w: 1}
            self._nf_cache[w] = hit
        return hit

    def multiply(self, x: dict, y: dict) -> dict:
        """Product of combinations of nontrivial paths (non-composable products vanish)."""
        arrows = self.quiver.arrows
        prod: dict = {}
        for u, a in x.items():
            for v, b in y.items():
                if u and v and arrows[u[-1]].target != arrows[v[0]].source:
                    continue
                key = tuple(u) + tuple(v)
                prod[key] = (prod.get(key, 0) + a * b) % self.p
        return self.normal_form({k: c for k, c in prod.items() if c})

    def is_irreducible(self, w: Path) -> bool:
        return self._red.find(tuple(w)) is None

    def opposite(self) -> "BoundAlgebra":
        cached = self.caches.get("opposite")
        if cached is None:
            cached = BoundAlgebra(self.quiver.opposite(), [r.reversed() for r in self.relations], self.p, self.max_len)
            cached.caches["opposite"] = self
            self.caches["opposite"] = cached
        return cached

    def relations_str(self) -> list:
        q = self.quiver
        out = []
        for r in self.relations:
            parts = []
            for w, c in r.terms:
                coeff = "" if c == 1 else f"{c}*"
                parts.append(coeff + q.path_str(w))
            out.append(" + ".join(parts))
        return out


def _check_relation(q: Quiver, r: Relation) -> None:
    if not r.terms:
        raise ValueError("empty relation")
    ends = set()
    for w, _ in r.terms:
        if len(w) < 2:
            raise ValueError(f"relation path {q.path_str(w)} has length < 2 (not admissible)")
        if not q.is_path(w):
            raise ValueError(f"{w} is not a path")
        ends.add((q.source(w), q.target(w)))
    if len(ends) != 1:
        raise ValueError("relation paths are not parallel")


def build_algebra(quiver: Quiver, relations, p: int = 2, max_len: int = 20) -> BoundAlgebra:
    """Construct kQ/I; raises AdmissibilityError if I is not admissible within ``max_len``."""
    return BoundAlgebra(quiver, relations, p, max_len)


def relation_from_terms(quiver: Quiver, terms, p: int) -> Relation:
    """``[(coeff, "a*b"), ...]`` -> Relation."""
    d: dict = {}
    for c, text in terms:
        w = quiver.parse_path(text)
        d[w] = (d.get(w, 0) + c) % p
    return Relation.from_dict(d, p)
