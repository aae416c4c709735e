import json

import pytest

from findim import cli
from findim.algfile import SpecError, example_path, parse_spec, render_spec
from findim.decomp import is_isomorphic

A2 = """field: 3
vertices: a, b
arrows:
  x: a -> b
"""


def write(tmp_path, text, name="alg.alg"):
    f = tmp_path / name
    f.write_text(text)
    return str(f)


def test_parse_example():
    spec = parse_spec(open(example_path()).read())
    assert spec.p == 2
    assert len(spec.vertices) == 5 and len(spec.arrows) == 8 and len(spec.relations) == 7
    assert spec.config == {"max_steps": 64, "max_total_dim": 4096, "window": 8, "seed": 0}
    a = spec.build()
    assert a.dim == 33
    mods = spec.build_modules(a)
    assert mods["T"].dims == (2, 0, 0, 0, 0)


def test_render_roundtrip(example):
    a, mods = example
    text = render_spec(a, mods)
    spec = parse_spec(text)
    b = spec.build()
    assert b.dim == a.dim and b.n == a.n
    assert [r.terms for r in b.relations] == [r.terms for r in a.relations]
    assert render_spec(b, spec.build_modules(b)) == text


def test_minimal_file():
    a = parse_spec(A2).build()
    assert a.dim == 3


@pytest.mark.parametrize(
    "text,line,col",
    [
        ("field: 2\nvertices: a\narrows:\n  x: a => a\n", 4, 3),
        ("field: 2\nvertices: a\narrows:\n  x: a -> z\n", 4, 11),
        ("field: 2\nvertices: a\nbogus: 1\n", 3, 1),
        ("field: 4\nvertices: a\n", 1, 8),
        ("field: 2\nvertices: a\nconfig:\n  colour: 3\n", 4, 3),
        ("field: 2\nvertices: a\narrows:\n  x: a -> a\nrelations:\n  x * * x\n", 6, 7),
        ("field: 2\nvertices: a\narrows:\n  x: a -> a\nrelations:\n  x*x $ x\n", 6, 7),
        ("field: 2\nvertices: a\n  stray\n", 3, 3),
    ],
)
def test_syntax_errors_carry_position(text, line, col):
    with pytest.raises(SpecError) as e:
        parse_spec(text)
    assert (e.value.line, e.value.col) == (line, col)
    assert str(e.value).startswith(f"line {line}, col {col}:")


@pytest.mark.parametrize(
    "rel,why",
    [("x", "length"), ("x*y - x", "length"), ("x*y - y*x", "parallel")],
)
def test_bad_relations(rel, why):
    text = "field: 2\nvertices: a, b\narrows:\n  x: a -> b\n  y: b -> a\nrelations:\n  " + rel + "\n"
    with pytest.raises(SpecError) as e:
        parse_spec(text).build()
    assert e.value.line == 7


def test_module_shape_error():
    text = A2 + "module M:\n  dims: 1 2\n  x: 1 0 1\n"
    spec = parse_spec(text)
    with pytest.raises(SpecError):
        spec.build_modules(spec.build())


def test_exit_codes(tmp_path):
    f = example_path()
    code, out = cli.run(["pd", f, "--module", "S(2)", "--format", "json"])
    assert code == cli.EXIT_OK
    rep = json.loads(out)
    assert rep["schema"] == 1 and rep["pd"] == {"status": "finite", "value": 2}
    code, out = cli.run(["pd", f, "--module", "S(1)", "--format", "json", "--caps", "1,4096"])
    assert code == cli.EXIT_UNKNOWN
    assert json.loads(out)["pd"]["status"] == "unknown"
    code, out = cli.run(["pd", str(tmp_path / "none.alg"), "--module", "S(1)"])
    assert code == cli.EXIT_ERROR
    bad = write(tmp_path, "field: 2\nvertices: a\nwhat: 1\n")
    code, out = cli.run(["report", bad])
    assert code == cli.EXIT_ERROR and "line 3, col 1" in out
    code, out = cli.run(["pd", f, "--module", "Q(9)"])
    assert code == cli.EXIT_ERROR


def test_infinite_witness_json():
    code, out = cli.run(["pd", example_path(), "--module", "S(1)", "--format", "json"])
    assert code == cli.EXIT_OK
    st = json.loads(out)["pd"]
    assert st["status"] == "infinite"
    assert all(len(v) == 5 for v in st["witness"])


def test_report_json_roundtrip_and_determinism(tmp_path):
    args = ["report", example_path(), "--format", "json"]
    c1, t1 = cli.run(args)
    c2, t2 = cli.run(args)
    assert c1 == cli.EXIT_OK and t1 == t2
    rep = cli.parse_report(t1)
    assert cli.render_json(rep).rstrip("\n") == t1.rstrip("\n")
    b = rep["bounds"]
    assert (b["bound_L1"], b["bound_L2"], b["bound_main"], b["alpha"]) == (3, 4, 5, 2)
    assert rep["simples"]["pd"]["2"] == {"status": "finite", "value": 2}
    assert rep["simples"]["infinite"] == ["1", "4"]
    cache = tmp_path / "cache"
    c3, t3 = cli.run(args + ["--cache", str(cache)])
    c4, t4 = cli.run(args + ["--cache", str(cache)])
    assert t3 == t1 == t4
    assert len(list(cache.iterdir())) == 1


def test_text_report():
    code, out = cli.run(["report", example_path()])
    assert code == cli.EXIT_OK
    assert "fin.dim Λ ≤ 5" in out


def test_small_algebra_report(tmp_path):
    f = write(tmp_path, A2)
    code, out = cli.run(["report", f, "--format", "json"])
    assert code == cli.EXIT_OK
    rep = json.loads(out)
    assert rep["algebra"]["dimension"] == 3


def test_module_refs():
    code, out = cli.run(["syzygy", example_path(), "--module", "T", "--power", "2", "--format", "json"])
    assert code == cli.EXIT_OK
    code, out = cli.run(["psi", example_path(), "--modules", "S(1),S(4)", "--omega", "3", "4", "--format", "json"])
    assert code == cli.EXIT_OK
    res = json.loads(out)["result"]
    assert res["phi"] == 0 and res["psi"] == 0 and res["certified"]
    assert {tuple(x["dims"]) for x in res["stable_summands"]} == {(1, 0, 0, 0, 0), (2, 0, 0, 0, 0)}


def test_selftest_command():
    code, out = cli.run(["selftest", example_path(), "--modules-count", "2", "--sequences", "2", "--format", "json"])
    assert code == cli.EXIT_OK, out
