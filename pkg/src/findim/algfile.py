"""Reader for ``.alg`` algebra description files.

Grammar (``#`` starts a comment; indentation marks block bodies)::

    file      := line*
    line      := "field:" int
               | "vertices:" label ("," label)*
               | "arrows:"    NEWLINE (INDENT name ":" label "->" label)*
               | "relations:" NEWLINE (INDENT relation)*
               | "module" name ":" NEWLINE INDENT "dims:" int* (INDENT name ":" matrix)*
               | "config:"    NEWLINE (INDENT key ":" int)*
    relation  := term (("+" | "-") term)*
    term      := [int "*"] path
    path      := name ("*" name)*
    matrix    := row (";" row)*        rows of ints, row-major, reduced mod p

Paths are written left to right: ``a*b`` means first ``a``, then ``b``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from .linalg import check_prime
from .modules import Representation
from .quiver import BoundAlgebra, Quiver, Relation, _check_relation

CONFIG_KEYS = {"max_steps", "max_total_dim", "window", "seed", "max_len"}
NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")


class SpecError(ValueError):
    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        where = f"line {line}, col {col}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line
        self.col = col


@dataclass
class ModuleBlock:
    name: str
    dims: list
    maps: dict  # arrow name -> list of rows
    line: int


@dataclass
class AlgebraSpec:
    p: int
    vertices: list
    arrows: list  # (name, source label, target label)
    relations: list  # list of [(coeff, [arrow names])]
    modules: list = field(default_factory=list)
    config: dict = field(default_factory=dict)

    def build(self) -> BoundAlgebra:
        q = Quiver.from_labels(self.vertices, self.arrows)
        rels = []
        for terms, line in self.relations:
            d: dict = {}
            for c, names in terms:
                w = tuple(q.arrow_index(n) for n in names)
                d[w] = (d.get(w, 0) + c) % self.p
            r = Relation.from_dict(d, self.p)
            try:
                _check_relation(q, r)
            except ValueError as e:
                raise SpecError(str(e), line, 1) from None
            rels.append(r)
        return BoundAlgebra(q, rels, self.p, self.config.get("max_len", 20))

    def build_modules(self, algebra: BoundAlgebra) -> dict:
        out = {}
        q = algebra.quiver
        for blk in self.modules:
            if len(blk.dims) != algebra.n:
                raise SpecError(f"module {blk.name}: expected {algebra.n} dimensions, got {len(blk.dims)}", blk.line, 1)
            maps = []
            for a in q.arrows:
                rows = blk.maps.get(a.name)
                shape = (blk.dims[a.target], blk.dims[a.source])
                if rows is None:
                    maps.append(np.zeros(shape, dtype=np.int64))
                    continue
                mat = np.array(rows, dtype=np.int64).reshape(-1, shape[1]) if shape[1] else np.zeros(shape, dtype=np.int64)
                if mat.shape != shape:
                    raise SpecError(f"module {blk.name}: map {a.name} has shape {mat.shape}, expected {shape}", blk.line, 1)
                maps.append(mat % self.p)
            unknown = set(blk.maps) - {a.name for a in q.arrows}
            if unknown:
                raise SpecError(f"module {blk.name}: unknown arrow(s) {sorted(unknown)}", blk.line, 1)
            try:
                out[blk.name] = Representation(algebra, blk.dims, maps)
            except ValueError as e:
                raise SpecError(f"module {blk.name}: {e}", blk.line, 1) from None
        return out


def _int(text: str, line: int, col: int) -> int:
    try:
        return int(text)
    except ValueError:
        raise SpecError(f"expected an integer, got {text!r}", line, col) from None


def parse_relation(text: str, line: int, col0: int) -> list:
    """``"2*a*b - c*d"`` -> ``[(2, ["a", "b"]), (-1, ["c", "d"])]``."""
    tokens = []
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch in "+-*":
            tokens.append((ch, pos))
            pos += 1
            continue
        m = re.match(r"\d+", text[pos:])
        if m:
            tokens.append(("int", pos, int(m.group())))
            pos += m.end()
            continue
        m = NAME.match(text, pos)
        if m:
            tokens.append(("name", pos, m.group()))
            pos = m.end()
            continue
        raise SpecError(f"unexpected character {ch!r}", line, col0 + pos)
    terms = []
    i = 0

    def err(msg, k):
        at = tokens[k][1] if k < len(tokens) else len(text)
        raise SpecError(msg, line, col0 + at)

    if not tokens:
        err("empty relation", 0)
    while i < len(tokens):
        sign = 1
        if tokens[i][0] in "+-" and (terms or tokens[i][0] == "-"):
            sign = -1 if tokens[i][0] == "-" else 1
            i += 1
        elif terms:
            err("expected '+' or '-' between terms", i)
        coeff = 1
        if i < len(tokens) and tokens[i][0] == "int":
            coeff = tokens[i][2]
            i += 1
            if i >= len(tokens) or tokens[i][0] != "*":
                err("expected '*' after coefficient", i)
            i += 1
        names = []
        while True:
            if i >= len(tokens) or tokens[i][0] != "name":
                err("expected an arrow name", i)
            names.append(tokens[i][2])
            i += 1
            if i < len(tokens) and tokens[i][0] == "*":
                i += 1
                continue
            break
        terms.append((sign * coeff, names))
    return terms


def _parse_matrix(text: str, line: int, col: int) -> list:
    rows = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        rows.append([_int(x, line, col) for x in chunk.split()] if chunk else [])
    width = {len(r) for r in rows}
    if len(width) > 1:
        raise SpecError("matrix rows have different lengths", line, col)
    return [x for r in rows for x in r]


def parse_spec(text: str) -> AlgebraSpec:
    p = None
    vertices = None
    arrows: list = []
    relations: list = []
    modules: list = []
    config: dict = {}
    block = None
    current_module = None
    seen_blocks = set()
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        indented = line[0] in " \t"
        body = line.strip()
        col = len(line) - len(line.lstrip()) + 1
        if not indented:
            block = None
            current_module = None
            head, sep, rest = body.partition(":")
            if not sep:
                raise SpecError(f"expected 'key:' at top level, got {body!r}", ln, col)
            head = head.strip()
            rest = rest.strip()
            rest_col = col + body.index(":") + 1 + (len(body.split(":", 1)[1]) - len(body.split(":", 1)[1].lstrip()))
            if head == "field":
                if p is not None:
                    raise SpecError("duplicate 'field'", ln, col)
                p = _int(rest, ln, rest_col)
                try:
                    check_prime(p)
                except ValueError as e:
                    raise SpecError(str(e), ln, rest_col) from None
            elif head == "vertices":
                if vertices is not None:
                    raise SpecError("duplicate 'vertices'", ln, col)
                vertices = [v.strip() for v in rest.split(",") if v.strip()]
                if not vertices:
                    raise SpecError("no vertices given", ln, rest_col)
                if len(set(vertices)) != len(vertices):
                    raise SpecError("duplicate vertex label", ln, rest_col)
            elif head in ("arrows", "relations", "config"):
                if rest:
                    raise SpecError(f"'{head}:' takes an indented block", ln, rest_col)
                if head in seen_blocks:
                    raise SpecError(f"duplicate '{head}' block", ln, col)
                seen_blocks.add(head)
                block = head
            elif head.startswith("module "):
                name = head[len("module ") :].strip()
                if not NAME.fullmatch(name):
                    raise SpecError(f"bad module name {name!r}", ln, col + 7)
                if any(m.name == name for m in modules):
                    raise SpecError(f"duplicate module {name!r}", ln, col + 7)
                current_module = ModuleBlock(name, [], {}, ln)
                modules.append(current_module)
                block = "module"
            else:
                raise SpecError(f"unknown key {head!r}", ln, col)
            continue
        if block is None:
            raise SpecError("indented line outside a block", ln, col)
        if block == "arrows":
            m = re.fullmatch(r"([A-Za-z_][A-Za-z0-9_']*)\s*:\s*(\S+)\s*->\s*(\S+)", body)
            if not m:
                raise SpecError("expected 'name: source -> target'", ln, col)
            arrows.append((m.group(1), m.group(2), m.group(3)))
            if vertices is not None:
                for lab, grp in ((m.group(2), 2), (m.group(3), 3)):
                    if lab not in vertices:
                        raise SpecError(f"arrow {m.group(1)} uses unknown vertex {lab!r}", ln, col + m.start(grp))
        elif block == "relations":
            relations.append((parse_relation(body, ln, col), ln))
        elif block == "config":
            key, sep, val = body.partition(":")
            key = key.strip()
            if not sep:
                raise SpecError("expected 'key: value'", ln, col)
            if key not in CONFIG_KEYS:
                raise SpecError(f"unknown config key {key!r}", ln, col)
            config[key] = _int(val.strip(), ln, col + body.index(":") + 1)
        elif block == "module":
            key, sep, val = body.partition(":")
            key = key.strip()
            if not sep:
                raise SpecError("expected 'dims: ...' or 'arrow: matrix'", ln, col)
            vcol = col + body.index(":") + 1
            if key == "dims":
                current_module.dims = [_int(x, ln, vcol) for x in val.split()]
            else:
                if key in current_module.maps:
                    raise SpecError(f"duplicate map for {key!r}", ln, col)
                current_module.maps[key] = _parse_matrix(val, ln, vcol)
    if p is None:
        raise SpecError("missing 'field'")
    if vertices is None:
        raise SpecError("missing 'vertices'")
    names = [a[0] for a in arrows]
    if len(set(names)) != len(names):
        raise SpecError("duplicate arrow name")
    for a in arrows:
        for lab in a[1:]:
            if lab not in vertices:
                raise SpecError(f"arrow {a[0]} uses unknown vertex {lab!r}")
    for terms, ln in relations:
        for _, ns in terms:
            for n in ns:
                if n not in names:
                    raise SpecError(f"unknown arrow {n!r} in relation", ln, 1)
    return AlgebraSpec(p, vertices, arrows, relations, modules, config)


def load(path) -> AlgebraSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_spec(fh.read())


def example_path() -> str:
    """Path of the shipped example algebra file."""
    from importlib import resources

    return str(resources.files("findim") / "data" / "example_algebra.alg")


def render_spec(algebra: BoundAlgebra, modules: dict | None = None) -> str:
    """Inverse of ``parse_spec`` for a built algebra."""
    q = algebra.quiver
    lines = [f"field: {algebra.p}", "vertices: " + ", ".join(q.vertices), "", "arrows:"]
    for a in q.arrows:
        lines.append(f"  {a.name}: {q.vertices[a.source]} -> {q.vertices[a.target]}")
    lines.append("")
    lines.append("relations:")
    for r in algebra.relations:
        parts = []
        for k, (w, c) in enumerate(r.terms):
            c = c if c <= algebra.p // 2 or algebra.p == 2 else c - algebra.p
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            coeff = "" if mag == 1 else f"{mag}*"
            text = coeff + q.path_str(w)
            parts.append(("- " if sign == "-" else "") + text if k == 0 else f"{sign} {text}")
        lines.append("  " + " ".join(parts))
    for name, m in (modules or {}).items():
        lines.append("")
        lines.append(f"module {name}:")
        lines.append("  dims: " + " ".join(str(d) for d in m.dims))
        for a, mat in zip(q.arrows, m.maps):
            if mat.size and mat.any():
                lines.append(f"  {a.name}: " + "; ".join(" ".join(str(int(x)) for x in row) for row in mat))
    return "\n".join(lines) + "\n"
