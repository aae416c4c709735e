"""Describe an algebra in the text format and query it.

The commutative square with one zero relation, written inline, is
parsed, checked and sent through the same code paths as the CLI.

    python demos/03_custom_algebra.py
"""

import json

from findim import cli, parse_spec, pd, simple
from findim.algfile import render_spec

TEXT = """\
field: 3
vertices: a, b, c, d
arrows:
  x: a -> b
  y: a -> c
  u: b -> d
  v: c -> d
relations:
  x*u - y*v
module M:
  dims: 1 1 0 0
  x: 1
"""

spec = parse_spec(TEXT)
algebra = spec.build()
mods = spec.build_modules(algebra)
print(algebra, "dimension", algebra.dim)
for v, lab in enumerate(algebra.quiver.vertices):
    print(f"pd S({lab}) = {pd(simple(algebra, v))}")
print("pd M =", pd(mods["M"]))
print(render_spec(algebra, mods))

# The CLI works on files; write one next to us and ask for the JSON report.
path = "/tmp/square.alg"
with open(path, "w") as fh:
    fh.write(TEXT)
code, out = cli.run(["report", path, "--format", "json"])
print("exit", code)
print(json.dumps(json.loads(out)["bounds"], indent=2))
