"""Igusa-Todorov functions Φ and Ψ.

``⟨M⟩`` is the subgroup of the free abelian group on non-projective
indecomposable classes spanned by the summands of ``M``; the syzygy acts on it
linearly.  Ranks of ``Ω^k⟨M⟩`` are computed over Q, which equals the rank of
the lattice.

Stabilisation is certified when the set of classes reachable under Ω is
closed: if it has ``R`` elements then ``Ω^k⟨M⟩`` sits inside the Fitting
image of Ω for ``k >= R``, where Ω is injective, so the ranks are constant
from step ``R`` on.  Without closure we fall back to the observed plateau.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import sympy

from .decomp import registry_for
from .homology import (
    DEFAULT_CAPS,
    Caps,
    Finite,
    Unknown,
    graph_for,
    omega_classes,
)
from .modules import Representation


class StabilityError(RuntimeError):
    def __init__(self, msg: str, ranks):
        super().__init__(f"{msg}; partial ranks {list(ranks)}")
        self.ranks = list(ranks)


@dataclass
class PhiResult:
    phi: int
    ranks: list
    verified_window: int
    stable: bool
    certified: bool  # stabilisation proved through closure of the reachable classes
    c_m: Counter = field(default_factory=Counter)  # non-projective part of Ω^phi M


@dataclass
class PsiResult:
    value: int | None  # None when some pd among the stabilised summands is unknown
    phi: PhiResult

    @property
    def stable(self) -> bool:
        return self.phi.stable

    @property
    def known(self) -> bool:
        return self.value is not None


def _counter_of(m) -> Counter:
    if isinstance(m, Counter):
        return m
    if isinstance(m, Representation):
        if m.is_zero():
            return Counter()
        return registry_for(m.algebra).register(m).counter()
    return Counter(m)


def _row_basis(rows: list) -> list:
    """Reduced basis (over Q) of the span of sparse integer vectors (dicts)."""
    rows = [r for r in rows if any(r.values())]
    if not rows:
        return []
    keys = sorted(set().union(*rows))
    mat = sympy.Matrix([[r.get(k, 0) for k in keys] for r in rows])
    red, piv = mat.rref()
    out = []
    for i in range(len(piv)):
        out.append({k: red[i, j] for j, k in enumerate(keys) if red[i, j] != 0})
    return out


def phi_of_classes(algebra, counter: Counter, window: int = 8, cap: int = 64, caps: Caps = DEFAULT_CAPS) -> PhiResult:
    reg = registry_for(algebra)
    support = sorted(c for c in counter if not reg.is_projective(c))
    if not support:
        return PhiResult(0, [0], window, True, True, Counter())
    expanded, closed, _ = graph_for(algebra, caps).explore(support, full=True)
    horizon = None
    if closed:
        reach = set(expanded)
        for c in expanded:
            reach |= set(reg.syzygy_classes(c))
        horizon = len([c for c in reach if not reg.is_projective(c)])

    def omega(vec):
        out: dict = {}
        for c, x in vec.items():
            for child, k in reg.syzygy_classes(c).items():
                out[child] = out.get(child, 0) + x * k
        return out

    basis = _row_basis([{c: 1} for c in support])
    ranks = [len(basis)]
    last_drop = 0
    while True:
        k = len(ranks) - 1
        if ranks[-1] == 0:
            certified = True
            break
        if horizon is not None and k >= horizon and k - last_drop >= window:
            certified = True
            break
        if horizon is None and k - last_drop >= window:
            certified = False
            break
        if k >= cap:
            raise StabilityError("Φ: cap exhausted before the ranks stabilised", ranks)
        basis = _row_basis([omega(v) for v in basis])
        if len(basis) < ranks[-1]:
            last_drop = len(ranks)
        ranks.append(len(basis))
    phi = last_drop
    stable_len = len(ranks) - 1 - last_drop
    return PhiResult(
        phi=phi,
        ranks=ranks,
        verified_window=stable_len,
        stable=certified or stable_len >= window,
        certified=certified,
        c_m=omega_classes(algebra, Counter({c: counter[c] for c in support}), phi),
    )


def phi(m, window: int = 8, cap: int = 64, caps: Caps = DEFAULT_CAPS) -> PhiResult:
    """Φ(M) together with the rank sequence and the summands of Ω^Φ M."""
    algebra = m.algebra if isinstance(m, Representation) else None
    if algebra is None:
        raise TypeError("phi() needs a Representation; use phi_of_classes for class vectors")
    return phi_of_classes(algebra, _counter_of(m), window, cap, caps)


def findim_of_statuses(statuses) -> int | None:
    """Max of the finite values, 0 if none; None when any status is unknown."""
    best = 0
    for s in statuses:
        if isinstance(s, Unknown):
            return None
        if isinstance(s, Finite):
            best = max(best, s.n)
    return best


def findim_of_class(mods, caps: Caps = DEFAULT_CAPS) -> int | None:
    from .homology import pd

    return findim_of_statuses(pd(m, caps) for m in mods)


def psi_of_classes(algebra, counter: Counter, window: int = 8, cap: int = 64, caps: Caps = DEFAULT_CAPS) -> PsiResult:
    res = phi_of_classes(algebra, counter, window, cap, caps)
    graph = graph_for(algebra, caps)
    fd = findim_of_statuses(graph.class_status(c) for c in res.c_m)
    return PsiResult(None if fd is None else res.phi + fd, res)


def psi(m, window: int = 8, cap: int = 64, caps: Caps = DEFAULT_CAPS) -> PsiResult:
    """Ψ(M) = Φ(M) + fin.dim add(Ω^Φ M)."""
    return psi_of_classes(m.algebra, _counter_of(m), window, cap, caps)


__all__ = [
    "PhiResult",
    "PsiResult",
    "StabilityError",
    "findim_of_class",
    "findim_of_statuses",
    "phi",
    "phi_of_classes",
    "psi",
    "psi_of_classes",
]
