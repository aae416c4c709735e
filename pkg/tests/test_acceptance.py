"""Acceptance criteria 1-14.  Each test records a PASS/FAIL line in the summary."""

import time
from collections import Counter

import pytest

import conftest
from findim import cli
from findim.algfile import example_path
from findim.bounds import evaluate_bounds, omega_support, sigma_counter, truncated_findim
from findim.checks import run_suite_by_kind
from findim.decomp import decompose_module, is_isomorphic, registry_for
from findim.homology import classify_simples
from findim.igusa_todorov import psi_of_classes
from findim.layers import F_iterates, G_iterates, l_inf_rad, l_inf_soc, ll_inf, ll_inf_dual, r_inf
from findim.modules import direct_sum, projective, radical, regular_module, simple
from findim.random_modules import random_algebras

SUITE_SIZE = 20
SUITE_SEED = 11


def record(n, ok, detail=""):
    conftest.ACCEPTANCE[n] = (bool(ok), detail)
    assert ok, detail


# --- example goldens ------------------------------------------------------------------


def example_invariants(a, mods) -> dict:
    """Every quantity named by criteria 1-7, as plain data."""
    cls = classify_simples(a)
    inf = cls.infinite
    p = [projective(a, i) for i in range(a.n)]
    out = {
        "infinite": sorted(inf),
        "alpha": cls.alpha,
        "ll_inf": [ll_inf(x, inf) for x in p],
        "ll_inf_algebra": ll_inf(regular_module(a), inf),
        "p1": (l_inf_rad(p[0], inf), l_inf_soc(p[0], inf), ll_inf_dual(p[0], inf), r_inf(p[0], inf)),
    }
    its = [x.as_rep() for x in F_iterates(p[0], inf)]
    out["F1"] = sorted(s.dim for s in decompose_module(its[1]))
    out["F2_is_S1^3"] = is_isomorphic(its[2], direct_sum(*[simple(a, 0)] * 3))
    out["F3_zero"] = its[3].is_zero()
    out["QG2_is_S1"] = is_isomorphic(G_iterates(p[0], inf)[2][1].quotient(), simple(a, 0))
    out["P4_rad_P3"] = is_isomorphic(p[3], radical(p[2]).as_rep())
    sig = sigma_counter(a)
    res = psi_of_classes(a, omega_support(a, sig, 3) + omega_support(a, sig, 4))
    reg = registry_for(a)
    cm = [reg.rep(c) for c in res.phi.c_m]
    out["psi"] = res.value
    out["c_m_has_S1"] = any(is_isomorphic(x, simple(a, 0)) for x in cm)
    out["c_m_has_T"] = any(is_isomorphic(x, mods["T"]) for x in cm)
    b = evaluate_bounds(a)
    out["bounds"] = (b.bound_L1, b.bound_L2, b.bound_main, b.unknown)
    return out


@pytest.fixture(scope="module")
def gf2(example):
    return example_invariants(*example)


def test_criterion_01_infinite_simples(gf2):
    record(1, gf2["infinite"] == [0, 3] and gf2["alpha"] == 2, f"S_inf={gf2['infinite']} alpha={gf2['alpha']}")


def test_criterion_02_ll_inf(gf2):
    ok = gf2["ll_inf"] == [3, 2, 2, 2, 3] and gf2["ll_inf_algebra"] == 3
    record(2, ok, f"projectives {gf2['ll_inf']}, algebra {gf2['ll_inf_algebra']}")


def test_criterion_03_layer_counts(gf2):
    record(3, gf2["p1"] == (5, 4, 3, 2), "l^inf, l_inf, ll_inf, r^inf of P(1) = %s" % (gf2["p1"],))


def test_criterion_04_iterates(gf2):
    ok = gf2["F1"] == [2, 4] and gf2["F2_is_S1^3"] and gf2["F3_zero"] and gf2["QG2_is_S1"]
    record(4, ok, f"F S(P1) summand dims {gf2['F1']}, F^2 S = S(1)^3: {gf2['F2_is_S1^3']}, F^3 S = 0: {gf2['F3_zero']}, QG^2 = S(1): {gf2['QG2_is_S1']}")


def test_criterion_05_iso(gf2):
    record(5, gf2["P4_rad_P3"], "P(4) = rad P(3)")


def test_criterion_06_psi(gf2):
    ok = gf2["psi"] == 0 and gf2["c_m_has_S1"] and gf2["c_m_has_T"]
    record(6, ok, f"Psi={gf2['psi']}, S(1) in c_M: {gf2['c_m_has_S1']}, T in c_M: {gf2['c_m_has_T']}")


def test_criterion_07_bound():
    code, out = cli.run(["report", example_path()])
    ok = code == cli.EXIT_OK and "fin.dim Λ ≤ 5" in out
    record(7, ok, "report prints fin.dim Λ ≤ 5" if ok else f"exit {code}")


# --- property suites --------------------------------------------------------------------


@pytest.fixture(scope="module")
def suite():
    """Seeded random modules and sequences over the suite algebras, results bucketed by kind."""
    algebras = random_algebras(SUITE_SIZE, seed=SUITE_SEED)
    out = {"functor": [], "layer": [], "it": [], "modules": 0, "sequences": 0, "algebras": algebras}
    for a in algebras:
        for kind, rows in run_suite_by_kind(a, modules=10, sequences=10).items():
            out[kind] += rows
        out["modules"] += 10
        out["sequences"] += 10
    return out


def tally(results):
    ok = sum(r is True for _, r in results)
    bad = Counter(n for n, r in results if r is False)
    skip = sum(r is None for _, r in results)
    return ok, bad, skip


def test_suite_shape(suite):
    a = suite["algebras"]
    assert len(a) >= 20 and suite["modules"] >= 200 and suite["sequences"] >= 200
    assert all(x.n <= 4 and len(x.quiver.arrows) <= 6 and x.p == 2 for x in a)


def test_criterion_08_functor_laws(suite):
    ok, bad, skip = tally(suite["functor"])
    record(8, not bad, f"{ok} checks held, {skip} at unknown pd status, failures {dict(bad)} over {suite['modules']} modules")


def test_criterion_09_ll_equalities(suite):
    rows = [(n, r) for n, r in suite["layer"] if n.startswith(("ll5", "ll4(c)"))]
    ok, bad, skip = tally(rows)
    record(9, not bad and not skip and ok == 2 * suite["modules"], f"{ok} checks held, failures {dict(bad)}")


def test_criterion_10_ll_plus_r(suite):
    rows = [(n, r) for n, r in suite["layer"] if n.startswith("compare")]
    ok, bad, skip = tally(rows)
    record(10, not bad and ok > 0, f"{ok} checks held, {skip} unresolved, failures {dict(bad)}")


def test_criterion_11_igusa_todorov(suite):
    ok, bad, skip = tally(suite["it"])
    rate = skip / max(1, ok + len(bad) + skip)
    record(11, not bad and rate < 0.10, f"{ok} held, {skip} skipped (rate {rate:.1%}), failures {dict(bad)} over {suite['sequences']} sequences")


def test_criterion_12_truncated_oracle(suite):
    lines, failures = [], []
    start = time.time()
    for k, a in enumerate(suite["algebras"]):
        rep = evaluate_bounds(a)
        if rep.ll_inf_algebra > 3:
            continue
        res = truncated_findim(a, max_dim=5, partial=True)
        bound = rep.bound_main
        within = bound is not None and res.max_finite_pd <= bound
        lines.append(f"#{k}: max pd {res.max_finite_pd} <= {bound} up to dim {res.max_dim}")
        if not within:
            failures.append(f"#{k} exceeds bound")
        elif not res.complete:
            failures.append(f"#{k} enumeration stopped at dim {res.max_dim} (budget)")
    detail = f"{len(lines)} algebras in {time.time() - start:.0f}s"
    if failures:
        detail += "; " + ", ".join(failures)
    record(12, not failures, detail)


# --- determinism and cross-characteristic --------------------------------------------------


def test_criterion_13_determinism():
    args = ["report", example_path(), "--format", "json", "--seed", "0"]
    c1, t1 = cli.run(args)
    c2, t2 = cli.run(args)
    record(13, c1 == c2 == cli.EXIT_OK and t1 == t2, f"{len(t1)} bytes, identical: {t1 == t2}")


def test_criterion_14_cross_characteristic(example_by_prime):
    vals = {p: example_invariants(*example_by_prime(p)) for p in (2, 3, 5)}
    diff = sorted(k for k in vals[2] if not vals[2][k] == vals[3][k] == vals[5][k])
    record(14, not diff, "criteria 1-7 data identical over GF(2), GF(3), GF(5)" if not diff else f"differs: {diff}")
