"""Projective dimension through the syzygy graph on indecomposable classes.

Nodes are non-projective indecomposable iso-classes; ``X -> Y`` whenever
``Y`` is a summand of the minimal syzygy of ``X``.  A class has finite
projective dimension iff no cycle is reachable from it, in which case the
value is the length of the longest path down to the projective layer.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .decomp import IsoRegistry, registry_for
from .modules import Representation, direct_sum, simple, syzygy_power, zero_module


@dataclass(frozen=True)
class Finite:
    n: int

    def __str__(self) -> str:
        return f"Finite({self.n})"


@dataclass(frozen=True)
class Infinite:
    witness: tuple  # class ids along a syzygy cycle, first == last

    def __str__(self) -> str:
        return "Infinite"


@dataclass(frozen=True)
class Unknown:
    explored: int

    def __str__(self) -> str:
        return f"Unknown(explored={self.explored})"


@dataclass(frozen=True)
class Caps:
    max_steps: int = 64
    max_total_dim: int = 4096


DEFAULT_CAPS = Caps()


class UnresolvedError(RuntimeError):
    """A projective dimension could not be decided within the caps."""


class SyzygyGraph:
    """Lazily grown syzygy graph over a registry."""

    def __init__(self, registry: IsoRegistry, caps: Caps = DEFAULT_CAPS):
        self.registry = registry
        self.caps = caps
        self.status: dict = {}

    def children(self, cid: int) -> Counter:
        return self.registry.syzygy_classes(cid)

    def explore(self, roots, full: bool = False) -> tuple:
        """Breadth-first closure from ``roots``; returns (expanded set, closed?, depth).

        Classes with a known status are not expanded again, and reaching one
        of infinite pd ends the search: everything above it is infinite too.
        With ``full`` every reachable class is expanded (within the caps).
        """
        reg, caps = self.registry, self.caps
        expanded: set = set()
        frontier = [c for c in dict.fromkeys(roots) if not reg.is_projective(c)]
        seen = set(frontier)
        depth = 0
        total = 0
        while frontier:
            if depth >= caps.max_steps:
                return expanded, False, depth
            nxt = []
            for c in frontier:
                if c in self.status and not full:
                    if isinstance(self.status[c], Infinite):
                        return expanded, False, depth
                    continue
                total += reg.rep(c).dim
                if total > caps.max_total_dim:
                    return expanded, False, depth
                expanded.add(c)
                kids = self.children(c)
                if not full and any(isinstance(self.status.get(k), Infinite) for k in kids):
                    return expanded, False, depth
                for child in kids:
                    if child not in seen:
                        seen.add(child)
                        nxt.append(child)
            frontier = nxt
            depth += 1
        return expanded, True, depth

    def class_status(self, cid: int):
        hit = self.status.get(cid)
        if hit is not None:
            return hit
        reg = self.registry
        if reg.is_projective(cid):
            self.status[cid] = Finite(0)
            return self.status[cid]
        expanded, closed, depth = self.explore([cid])
        self._resolve(expanded, closed, depth)
        return self.status.get(cid, Unknown(depth))

    def _resolve(self, expanded: set, closed: bool, depth: int) -> None:
        """Fill ``status`` for every node of the explored region that can be decided."""
        state: dict = {}  # 1 = on stack, 2 = done
        result: dict = dict((c, s) for c, s in self.status.items())

        def visit(c, stack):
            if c in result:
                return result[c]
            if c not in expanded:
                return None
            state[c] = 1
            stack.append(c)
            best = 0
            outcome = None
            unknown = False
            for child in sorted(self.children(c)):
                if state.get(child) == 1:
                    cyc = tuple(stack[stack.index(child) :]) + (child,)
                    outcome = Infinite(cyc)
                    break
                sub = visit(child, stack)
                if sub is None:
                    unknown = True
                elif isinstance(sub, Infinite):
                    outcome = sub
                    break
                elif isinstance(sub, Finite):
                    best = max(best, sub.n)
                else:
                    unknown = True
            stack.pop()
            state[c] = 2
            if outcome is None:
                outcome = None if unknown else Finite(best + 1)
            if outcome is not None:
                result[c] = outcome
            return outcome

        for c in sorted(expanded):
            visit(c, [])
        for c, s in result.items():
            self.status[c] = s


def graph_for(algebra, caps: Caps = DEFAULT_CAPS) -> SyzygyGraph:
    graphs = algebra.caches.setdefault("graphs", {})
    g = graphs.get(caps)
    if g is None:
        g = SyzygyGraph(registry_for(algebra), caps)
        graphs[caps] = g
    return g


def combine_statuses(statuses):
    """pd of a direct sum: Infinite beats Unknown beats Finite(max)."""
    statuses = list(statuses)
    for s in statuses:
        if isinstance(s, Infinite):
            return s
    unknown = [s for s in statuses if isinstance(s, Unknown)]
    if unknown:
        return Unknown(max(u.explored for u in unknown))
    return Finite(max((s.n for s in statuses), default=0))


def pd_of_classes(algebra, classes, caps: Caps = DEFAULT_CAPS):
    g = graph_for(algebra, caps)
    return combine_statuses(g.class_status(c) for c in classes)


def pd(m: Representation, caps: Caps = DEFAULT_CAPS):
    """Projective dimension status of ``m``."""
    if m.is_zero():
        return Finite(0)
    dec = registry_for(m.algebra).register(m)
    return pd_of_classes(m.algebra, dec.classes(), caps)


def is_finite(status) -> bool:
    return isinstance(status, Finite)


def omega_classes(algebra, counter: Counter, n: int) -> Counter:
    """Non-projective part of the n-th syzygy, as class multiplicities."""
    reg = registry_for(algebra)
    cur = Counter({c: k for c, k in counter.items() if not reg.is_projective(c)})
    for _ in range(n):
        nxt: Counter = Counter()
        for c, k in cur.items():
            for child, j in reg.syzygy_classes(c).items():
                nxt[child] += k * j
        cur = nxt
        if not cur:
            break
    return cur


def classes_of(m: Representation) -> Counter:
    return registry_for(m.algebra).register(m).counter()


@dataclass(frozen=True)
class SimpleClassification:
    infinite: frozenset  # vertices whose simple has infinite pd
    finite: frozenset
    alpha: int
    statuses: tuple  # per vertex

    @property
    def sigma_vertices(self) -> tuple:
        return tuple(sorted(self.infinite))


def classify_simples(algebra, caps: Caps = DEFAULT_CAPS) -> SimpleClassification:
    cache = algebra.caches.setdefault("classification", {})
    if caps in cache:
        return cache[caps]
    statuses = tuple(pd(simple(algebra, i), caps) for i in range(algebra.n))
    bad = [algebra.quiver.vertices[i] for i, s in enumerate(statuses) if isinstance(s, Unknown)]
    if bad:
        raise UnresolvedError(f"pd of simple(s) {bad} unresolved within caps; raise caps")
    inf = frozenset(i for i, s in enumerate(statuses) if isinstance(s, Infinite))
    fin = frozenset(range(algebra.n)) - inf
    alpha = max((statuses[i].n for i in fin), default=0)
    out = SimpleClassification(inf, fin, alpha, statuses)
    cache[caps] = out
    return out


def sigma(algebra, caps: Caps = DEFAULT_CAPS) -> Representation:
    """Direct sum of the simples of infinite projective dimension."""
    cls = classify_simples(algebra, caps)
    mods = [simple(algebra, i) for i in cls.sigma_vertices]
    return direct_sum(*mods) if mods else zero_module(algebra)


__all__ = [
    "Caps",
    "DEFAULT_CAPS",
    "Finite",
    "Infinite",
    "Unknown",
    "SyzygyGraph",
    "SimpleClassification",
    "UnresolvedError",
    "classify_simples",
    "combine_statuses",
    "omega_classes",
    "pd",
    "pd_of_classes",
    "sigma",
    "syzygy_power",
]
