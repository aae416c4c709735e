"""Command line front end: ``findim <command> <file.alg> [options]``.

Exit codes: 0 success, 2 when some requested value is Unknown within the
caps, 1 on any error (bad input, failed self-test, ...).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import re
import sys
from collections import Counter

from . import __version__
from .algfile import SpecError, parse_spec
from .bounds import evaluate_bounds, omega_support
from .decomp import IsoRegistry, registry_for
from .homology import Caps, Finite, Infinite, Unknown, UnresolvedError, classes_of, classify_simples, pd
from .igusa_todorov import StabilityError, psi
from .layers import layer_profile
from .modules import direct_sum, injective, projective, regular_module, simple, syzygy_power

SCHEMA = 1
EXIT_OK, EXIT_ERROR, EXIT_UNKNOWN = 0, 1, 2
MODULE_REF = re.compile(r"^([SPI])\((.+)\)$")


class CliError(Exception):
    pass


# --- status rendering ---------------------------------------------------------


def status_json(status, algebra) -> dict:
    if isinstance(status, Finite):
        return {"status": "finite", "value": status.n}
    if isinstance(status, Infinite):
        reg = registry_for(algebra)
        return {"status": "infinite", "witness": [list(reg.rep(c).dims) for c in status.witness]}
    return {"status": "unknown", "explored": status.explored}


def status_text(s: dict) -> str:
    if s["status"] == "finite":
        return str(s["value"])
    if s["status"] == "infinite":
        return "inf"
    return f"Unknown(explored={s['explored']})"


def has_unknown(obj) -> bool:
    if isinstance(obj, dict):
        if obj.get("status") == "unknown" or obj.get("unknown") is True:
            return True
        return any(has_unknown(v) for v in obj.values())
    if isinstance(obj, list):
        return any(has_unknown(v) for v in obj)
    return False


def render_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def parse_report(text: str) -> dict:
    return json.loads(text)


# --- loading ----------------------------------------------------------------------


def _caps(text: str | None, config: dict) -> Caps:
    steps = config.get("max_steps", Caps.max_steps)
    dim = config.get("max_total_dim", Caps.max_total_dim)
    if text:
        try:
            s, d = (int(x) for x in text.split(","))
        except ValueError:
            raise CliError(f"--caps expects 'steps,dim', got {text!r}") from None
        steps, dim = s, d
    return Caps(steps, dim)


class Session:
    """Parsed file, algebra, named modules and run settings."""

    def __init__(self, path: str, args):
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise CliError(f"cannot read {path}: {e.strerror}") from None
        self.text = text
        self.spec = parse_spec(text)
        self.algebra = self.spec.build()
        self.modules = self.spec.build_modules(self.algebra)
        cfg = self.spec.config
        self.seed = args.seed if args.seed is not None else cfg.get("seed", 0)
        self.window = args.window if args.window is not None else cfg.get("window", 8)
        self.caps = _caps(args.caps, cfg)
        self.algebra.caches["registry"] = IsoRegistry(self.algebra, self.seed)
        self.cache_file = None
        if getattr(args, "cache", None):
            digest = hashlib.sha256(f"{text}\0{self.seed}".encode()).hexdigest()[:24]
            os.makedirs(args.cache, exist_ok=True)
            self.cache_file = os.path.join(args.cache, f"{digest}.json")
            if os.path.exists(self.cache_file):
                with open(self.cache_file, encoding="utf-8") as fh:
                    self.algebra.caches["registry"].load_dict(json.load(fh))

    def save(self) -> None:
        if self.cache_file:
            tmp = self.cache_file + ".tmp"
            with open(tmp, "w", encoding="utf-8") as fh:
                json.dump(registry_for(self.algebra).to_dict(), fh)
            os.replace(tmp, self.cache_file)

    def vertex(self, label: str) -> int:
        try:
            return self.algebra.quiver.vertices.index(label.strip())
        except ValueError:
            raise CliError(f"unknown vertex {label!r}") from None

    def module(self, ref: str):
        ref = ref.strip()
        if ref in self.modules:
            return self.modules[ref]
        if ref in ("Lambda", "A"):
            return regular_module(self.algebra)
        m = MODULE_REF.match(ref)
        if m:
            kind, v = m.group(1), self.vertex(m.group(2))
            return {"S": simple, "P": projective, "I": injective}[kind](self.algebra, v)
        raise CliError(f"unknown module {ref!r} (use a module name, S(i), P(i), I(i) or Lambda)")

    def module_sum(self, refs: list):
        mods = [self.module(r) for r in refs]
        return mods[0] if len(mods) == 1 else direct_sum(*mods)

    def label(self, v: int) -> str:
        return self.algebra.quiver.vertices[v]


def _split_refs(text: str) -> list:
    """``"S(1),T, P(2)"`` -> ``["S(1)", "T", "P(2)"]`` (commas inside parentheses kept)."""
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch == "," and depth == 0:
            out.append(cur)
            cur = ""
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur += ch
    out.append(cur)
    return [r.strip() for r in out if r.strip()]


# --- commands ---------------------------------------------------------------------


def _header(s: Session, command: str) -> dict:
    a = s.algebra
    return {
        "schema": SCHEMA,
        "command": command,
        "algebra": {
            "field": a.p,
            "vertices": list(a.quiver.vertices),
            "arrows": len(a.quiver.arrows),
            "relations": len(a.relations),
            "dimension": a.dim,
        },
        "settings": {"seed": s.seed, "window": s.window, "caps": [s.caps.max_steps, s.caps.max_total_dim]},
    }


def _simples_block(s: Session) -> dict:
    try:
        cls = classify_simples(s.algebra, s.caps)
    except UnresolvedError:
        statuses = [pd(simple(s.algebra, i), s.caps) for i in range(s.algebra.n)]
        return {
            "pd": {s.label(i): status_json(st, s.algebra) for i, st in enumerate(statuses)},
            "alpha": {"status": "unknown", "explored": max((st.explored for st in statuses if isinstance(st, Unknown)), default=0)},
            "infinite": None,
        }
    return {
        "pd": {s.label(i): status_json(st, s.algebra) for i, st in enumerate(cls.statuses)},
        "alpha": cls.alpha,
        "infinite": [s.label(v) for v in cls.sigma_vertices],
    }


def _layers(s: Session, m) -> dict:
    prof = layer_profile(m, classify_simples(s.algebra, s.caps).infinite)
    return {
        "ll_inf": prof.ll_inf_top,
        "ll_inf_dual": prof.ll_inf_soc,
        "l_inf_rad": prof.l_inf_rad,
        "l_inf_soc": prof.l_inf_soc,
        "r_inf": prof.r_inf,
        "loewy_length": prof.loewy_length,
        "zeta": list(prof.zeta),
        "phi": prof.phi_first,
    }


def _psi_block(s: Session, m) -> dict:
    try:
        res = psi(m, window=s.window, caps=s.caps)
    except StabilityError as e:
        return {"status": "unknown", "explored": len(e.ranks), "reason": str(e)}
    reg = registry_for(s.algebra)
    stable_part = [
        {"dims": list(reg.rep(c).dims), "multiplicity": k}
        for c, k in sorted(res.phi.c_m.items(), key=lambda kv: (reg.rep(kv[0]).dims, kv[1]))
    ]
    out = {
        "phi": res.phi.phi,
        "ranks": list(res.phi.ranks),
        "certified": res.phi.certified,
        "stable": res.phi.stable,
        "stable_summands": sorted(stable_part, key=lambda d: (d["dims"], d["multiplicity"])),
    }
    if res.value is None:
        out["psi"] = {"status": "unknown", "explored": len(res.phi.ranks)}
    else:
        out["psi"] = res.value
    if not res.phi.stable:
        out["unknown"] = True
    return out


def _bounds_block(s: Session) -> dict:
    rep = evaluate_bounds(s.algebra, s.caps, s.window)
    d = rep.to_dict()
    d["unknown"] = rep.unknown
    for key in ("psi_term1", "psi_term2", "bound_L1", "bound_L2", "bound_main"):
        if d[key] is None and rep.unknown:
            d[key] = {"status": "unknown", "explored": s.caps.max_steps}
    return d


def cmd_report(s: Session, args) -> dict:
    out = _header(s, "report")
    simples = _simples_block(s)
    out["simples"] = simples
    if simples["infinite"] is None:
        return out
    out["projectives"] = {
        s.label(i): dict(_layers(s, projective(s.algebra, i)), pd=status_json(Finite(0), s.algebra))
        for i in range(s.algebra.n)
    }
    lam = _layers(s, regular_module(s.algebra))
    out["algebra_layers"] = {"ll_inf": lam["ll_inf"], "ll_inf_dual": lam["ll_inf_dual"]}
    out["modules"] = {name: {"pd": status_json(pd(m, s.caps), s.algebra), "dims": list(m.dims)} for name, m in s.modules.items()}
    out["bounds"] = _bounds_block(s)
    return out


def cmd_pd(s: Session, args) -> dict:
    out = _header(s, "pd")
    m = s.module_sum(_split_refs(args.module))
    out["module"] = args.module
    out["pd"] = status_json(pd(m, s.caps), s.algebra)
    return out


def cmd_syzygy(s: Session, args) -> dict:
    out = _header(s, "syzygy")
    m = s.module_sum(_split_refs(args.module))
    if args.power < 0:
        raise CliError("--power must be non-negative")
    om = syzygy_power(m, args.power)
    reg = registry_for(s.algebra)
    counter = classes_of(om) if om.dim else Counter()
    out["module"] = args.module
    out["power"] = args.power
    out["dims"] = list(om.dims)
    out["summands"] = sorted(
        [
            {
                "dims": list(reg.rep(c).dims),
                "multiplicity": k,
                "projective": reg.is_projective(c),
                "pd": status_json(pd(reg.rep(c), s.caps), s.algebra),
            }
            for c, k in counter.items()
        ],
        key=lambda d: (d["dims"], d["multiplicity"], d["projective"]),
    )
    return out


def cmd_layerlength(s: Session, args) -> dict:
    out = _header(s, "layerlength")
    m = s.module_sum(_split_refs(args.module))
    out["module"] = args.module
    out["layers"] = _layers(s, m)
    return out


def cmd_psi(s: Session, args) -> dict:
    out = _header(s, "psi")
    refs = _split_refs(args.modules)
    if not refs:
        raise CliError("--modules needs at least one module")
    m = s.module_sum(refs)
    if args.omega:
        cls = classify_simples(s.algebra, s.caps)
        counter = classes_of(m)
        total: Counter = Counter()
        for n in args.omega:
            total += omega_support(s.algebra, counter, n)
        out["omega"] = sorted(args.omega)
        m = registry_for(s.algebra).rebuild(_as_dec(total)) if total else None
        del cls
    out["modules"] = refs
    out["result"] = _psi_block(s, m) if m is not None else {"phi": 0, "psi": 0, "ranks": [], "certified": True, "stable": True, "stable_summands": []}
    return out


def _as_dec(counter: Counter):
    from .decomp import Decomposition

    return Decomposition.from_counter(counter, [])


def cmd_bounds(s: Session, args) -> dict:
    out = _header(s, "bounds")
    out["simples"] = _simples_block(s)
    if out["simples"]["infinite"] is not None:
        out["bounds"] = _bounds_block(s)
    return out


def cmd_selftest(s: Session, args) -> dict:
    from .checks import run_suite, summarize

    out = _header(s, "selftest")
    results = run_suite(s.algebra, modules=args.modules_count, sequences=args.sequences, seed=s.seed, caps=s.caps)
    passed, failed, skipped, names = summarize(results)
    out["selftest"] = {"passed": passed, "failed": failed, "skipped": skipped, "failures": sorted(set(names))}
    return out


# --- text rendering -----------------------------------------------------------------


def _fmt(v) -> str:
    if isinstance(v, dict) and "status" in v:
        return status_text(v)
    if v is None:
        return "n/a"
    return str(v)


def render_text(rep: dict) -> str:
    a = rep["algebra"]
    lines = [
        f"algebra over GF({a['field']}): {len(a['vertices'])} vertices, {a['arrows']} arrows, "
        f"{a['relations']} relations, dimension {a['dimension']}"
    ]
    if "simples" in rep:
        sm = rep["simples"]
        lines.append("pd of simples: " + ", ".join(f"S({k}) {status_text(v)}" for k, v in sm["pd"].items()))
        if sm["infinite"] is not None:
            inf = ", ".join(f"S({k})" for k in sm["infinite"]) or "none"
            lines.append(f"simples of infinite pd: {inf}")
        lines.append(f"alpha = {_fmt(sm['alpha'])}")
    if "projectives" in rep:
        lines.append("projectives (ll_inf, ll_inf dual, l_inf rad, l_inf soc, r_inf, zeta):")
        for k, v in rep["projectives"].items():
            lines.append(
                f"  P({k}): {v['ll_inf']}, {v['ll_inf_dual']}, {v['l_inf_rad']}, {v['l_inf_soc']}, {v['r_inf']}, {v['zeta']}"
            )
        lines.append(f"ll_inf(Lambda) = {rep['algebra_layers']['ll_inf']}")
    for name, v in rep.get("modules", {}).items() if isinstance(rep.get("modules"), dict) else []:
        lines.append(f"module {name} {tuple(v['dims'])}: pd {status_text(v['pd'])}")
    if "pd" in rep:
        lines.append(f"pd {rep['module']} = {status_text(rep['pd'])}")
    if "summands" in rep:
        lines.append(f"syzygy^{rep['power']} of {rep['module']}: dims {tuple(rep['dims'])}")
        for d in rep["summands"]:
            tag = "projective" if d["projective"] else f"pd {status_text(d['pd'])}"
            lines.append(f"  {d['multiplicity']} x {tuple(d['dims'])} ({tag})")
    if "layers" in rep:
        v = rep["layers"]
        lines.append(
            f"{rep['module']}: ll_inf {v['ll_inf']}, ll_inf dual {v['ll_inf_dual']}, l_inf rad {v['l_inf_rad']}, "
            f"l_inf soc {v['l_inf_soc']}, r_inf {v['r_inf']}, zeta {v['zeta']}, phi {_fmt(v['phi'])}"
        )
    if "result" in rep:
        r = rep["result"]
        if r.get("status") == "unknown":
            lines.append(f"Psi: Unknown ({r.get('reason', '')})")
        else:
            flag = "" if r["stable"] else " (not stabilised within window)"
            lines.append(f"Phi = {r['phi']}, Psi = {_fmt(r['psi'])}{flag}")
    if "bounds" in rep:
        b = rep["bounds"]
        lines.append(f"ll_inf(Lambda) = {b['ll_inf_algebra']}, beta = {b['beta']}")
        lines.append(f"Psi terms: {_fmt(b['psi_term1'])}, {_fmt(b['psi_term2'])}")
        lines.append(f"bound L1: fin.dim Λ ≤ {_fmt(b['bound_L1'])}")
        lines.append(f"bound L2: fin.dim Λ ≤ {_fmt(b['bound_L2'])}")
        if b["findim_exact"] is not None:
            lines.append(f"fin.dim Λ = {b['findim_exact']}")
        elif b["bound_main"] is not None and not isinstance(b["bound_main"], dict):
            lines.append(f"fin.dim Λ ≤ {b['bound_main']}")
        else:
            lines.append(f"main bound: {b['applicable']}")
        for n in b["notes"]:
            lines.append(f"note: {n}")
    if "selftest" in rep:
        t = rep["selftest"]
        lines.append(f"selftest: {t['passed']} passed, {t['failed']} failed, {t['skipped']} skipped")
        for n in t["failures"]:
            lines.append(f"  failed: {n}")
    return "\n".join(lines) + "\n"


# --- entry point ----------------------------------------------------------------------


COMMANDS = {
    "report": cmd_report,
    "pd": cmd_pd,
    "syzygy": cmd_syzygy,
    "layerlength": cmd_layerlength,
    "psi": cmd_psi,
    "bounds": cmd_bounds,
    "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", help="algebra description (.alg)")
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--caps", default=None, help="'max_steps,max_total_dim'")
    common.add_argument("--window", type=int, default=None, help="rank plateau length for Phi")
    common.add_argument("--cache", default=None, help="directory for persisted iso-class registries")

    parser = argparse.ArgumentParser(prog="findim", description="Homological invariants of bound quiver algebras.")
    parser.add_argument("--version", action="version", version=f"findim {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("report", parents=[common], help="full invariant report")
    p = sub.add_parser("pd", parents=[common], help="projective dimension of a module")
    p.add_argument("--module", required=True)
    p = sub.add_parser("syzygy", parents=[common], help="decomposed n-th syzygy")
    p.add_argument("--module", required=True)
    p.add_argument("--power", type=int, default=1)
    p = sub.add_parser("layerlength", parents=[common], help="layer lengths, zeta and r_inf")
    p.add_argument("--module", required=True)
    p = sub.add_parser("psi", parents=[common], help="Igusa-Todorov Phi and Psi of a direct sum")
    p.add_argument("--modules", required=True, help="comma separated module references")
    p.add_argument("--omega", type=int, nargs="*", default=None, help="use the sum of these syzygies of the modules")
    sub.add_parser("bounds", parents=[common], help="finitistic dimension bounds")
    p = sub.add_parser("selftest", parents=[common], help="run the property checks on random modules")
    p.add_argument("--modules-count", type=int, default=10)
    p.add_argument("--sequences", type=int, default=10)
    return parser


def run(argv=None) -> tuple:
    """(exit code, rendered output) without touching stdout."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return (EXIT_ERROR if e.code else EXIT_OK), ""
    try:
        s = Session(args.file, args)
        rep = COMMANDS[args.command](s, args)
        s.save()
    except (SpecError, CliError, UnresolvedError) as e:
        return EXIT_ERROR, f"error: {e}\n"
    text = render_json(rep) if args.format == "json" else render_text(rep)
    if args.command == "selftest" and rep["selftest"]["failed"]:
        return EXIT_ERROR, text
    return (EXIT_UNKNOWN if has_unknown(rep) else EXIT_OK), text


def main(argv=None) -> int:
    code, text = run(argv)
    out = sys.stdout if code != EXIT_ERROR or not text.startswith("error:") else sys.stderr
    out.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
