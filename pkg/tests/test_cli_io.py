import json
import subprocess
import sys
from fractions import Fraction

import pytest

from helpers import WORKED_TERMS
from treedet import io
from treedet.cli import main
from treedet.errors import GraphError, NotSquare
from treedet.graph import Digraph
from treedet.symbolic import canonical_polynomial, parse, u

FULL = {"n": 3, "entries": [
    ["u11 + u21 + u31", "-u12", "-u13"],
    ["-u21", "u12 + u22 + u32", "-u23"],
    ["-u31", "-u32", "u13 + u23 + u33"],
]}
UPPER = {"n": 3, "entries": [
    ["u11", "-u12", "-u13"],
    [0, "u12 + u22", "-u23"],
    [0, 0, "u13 + u23 + u33"],
]}


@pytest.fixture
def write(tmp_path):
    def _write(name, content):
        p = tmp_path / name
        p.write_text(content if isinstance(content, str) else json.dumps(content))
        return str(p)
    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# --- io ---------------------------------------------------------------------

def test_parse_number():
    assert io.parse_number("3") == 3 and isinstance(io.parse_number("3"), int)
    assert io.parse_number("3/4") == Fraction(3, 4)
    assert io.parse_number("0.25") == 0.25
    with pytest.raises(ValueError):
        io.parse_number("x")


def test_matrix_json_symbolic_promotion():
    m = io.matrix_from_json(UPPER)
    assert m.is_symbolic
    assert m[0, 0] == u(1, 1) and m[1, 0] == parse("0")


def test_matrix_json_n_mismatch():
    with pytest.raises(NotSquare):
        io.matrix_from_json({"n": 2, "entries": [[1]]})
    with pytest.raises(GraphError):
        io.matrix_from_json({"rows": []})


def test_matrix_json_roundtrip():
    m = io.matrix_from_json({"entries": [[1, "1/2"], [0.5, -3]]})
    assert io.matrix_from_json(io.matrix_to_json(m)) == m


def test_csv():
    m = io.matrix_from_csv("1,2\n3/2,4.5\n")
    assert m.tolist() == [[1, 2], [Fraction(3, 2), 4.5]]


def test_digraph_json_roundtrip():
    g = Digraph.from_arcs(3, [(0, 1, u(1, 1)), (1, 2, Fraction(1, 3)), (0, 2, 2), (0, 2, 2)])
    h = io.digraph_from_json(io.digraph_to_json(g))
    assert [(a.source, a.target, a.weight) for a in h.arcs] == [(a.source, a.target, a.weight) for a in g.arcs]


def test_load_errors(write, tmp_path):
    with pytest.raises(GraphError):
        io.load(tmp_path / "missing.json")
    with pytest.raises(GraphError):
        io.load(write("bad.json", "{nope"))
    with pytest.raises(GraphError):
        io.load(write("bad.csv", "1,a\n"))


def test_dot_roundtrip():
    g = Digraph.from_arcs(3, [(0, 1, parse("u11 + u21")), (1, 2, 3)])
    text = io.to_dot(g)
    assert "0 [shape=doublecircle]" in text
    assert io.parse_dot_arcs(text) == [(0, 1, "u11 + u21"), (1, 2, "3")]


# --- cli --------------------------------------------------------------------

def test_det_all_methods_on_ones(write, capsys):
    path = write("ones.json", {"entries": [[3, -1, -1], [-1, 3, -1], [-1, -1, 3]]})
    for method in ("tree", "reference", "factor", "factor-sequential", "factor-partitioned"):
        code, out, _ = run(capsys, "det", path, "--method", method)
        assert code == 0 and out.strip() == "16", method


def test_det_csv_identity(write, capsys):
    code, out, _ = run(capsys, "det", write("eye.csv", "1,0,0\n0,1,0\n0,0,1\n"))
    assert (code, out.strip()) == (0, "1")


def test_det_symbolic_tree(write, capsys):
    code, out, _ = run(capsys, "det", write("upper.json", UPPER))
    assert code == 0
    assert canonical_polynomial(parse(out)) == canonical_polynomial(parse("u11(u12+u22)(u13+u23+u33)"))


def test_det_reference_symbolic_fails(write, capsys):
    code, _, err = run(capsys, "det", write("full.json", FULL), "--method", "reference")
    assert code == 1 and "non-numeric" in err


def test_enumerate(write, capsys):
    code, out, _ = run(capsys, "enumerate", write("full.json", FULL))
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 17
    assert all("\t" in line and "->" in line for line in lines[:-1])
    total = sum((parse(line.split("\t")[1]) for line in lines[:-1]), parse("0"))
    assert canonical_polynomial(total) == canonical_polynomial(parse(lines[-1]))


def test_factor_text_reproduces_six_terms(write, capsys):
    code, out, _ = run(capsys, "factor", write("full.json", FULL), "--strategy", "sequential")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 7
    for got, want in zip(lines, WORKED_TERMS):
        assert canonical_polynomial(parse(got)) == canonical_polynomial(parse(want))
    assert lines[-1].startswith("# 6 leaves (sequential); determinant = ")


def test_factor_json(write, capsys):
    code, out, _ = run(capsys, "factor", write("full.json", FULL), "--strategy", "partitioned", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["strategy"] == "partitioned" and data["leaves"] == 13
    assert len(data["terms"]) == 13 and all({"text", "ast", "trace"} <= set(t) for t in data["terms"])


def test_factor_order_and_no_rotate(write, capsys):
    path = write("full.json", FULL)
    _, a, _ = run(capsys, "factor", path, "--order", "3,2,1")
    _, b, _ = run(capsys, "factor", path)
    _, c, _ = run(capsys, "factor", path, "--no-rotate")
    assert a != b and c != b
    assert a.splitlines()[-1].split("= ")[1] == b.splitlines()[-1].split("= ")[1] == c.splitlines()[-1].split("= ")[1]


def test_factor_bad_order(write, capsys):
    code, _, err = run(capsys, "factor", write("full.json", FULL), "--order", "1,x")
    assert code == 1 and "order" in err
    code, _, _ = run(capsys, "factor", write("fullb.json", FULL), "--order", "1,2")
    assert code == 1


def test_factor_emit_dot(write, capsys, tmp_path):
    out_dir = tmp_path / "dots"
    code, _, _ = run(capsys, "factor", write("full.json", FULL), "--emit-dot", str(out_dir))
    manifest = json.loads((out_dir / "manifest.json").read_text())
    assert code == 0 and manifest[0]["file"] == "000_input.dot"
    assert sum(1 for m in manifest if m["kind"] == "leaf") == 6
    for m in manifest:
        assert (out_dir / m["file"]).read_text().startswith("digraph")


def test_export_dot_isolate(write, capsys, tmp_path):
    out_dir = tmp_path / "x"
    code, out, _ = run(capsys, "export-dot", write("upper.json", UPPER), str(out_dir), "--isolate")
    assert code == 0 and len(out.splitlines()) == 2
    arcs = io.parse_dot_arcs((out_dir / "001_moved.dot").read_text())
    assert [(s, t) for s, t, _ in arcs] == [(0, 1), (0, 2), (0, 3)]
    assert [w for _, _, w in arcs] == ["u11", "u12 + u22", "u13 + u23 + u33"]


def test_digraph_input(write, capsys):
    g = Digraph.from_arcs(3, [(0, 1, 2), (0, 2, 3), (1, 2, 5)])
    code, out, _ = run(capsys, "det", write("g.json", io.digraph_to_json(g)))
    assert (code, out.strip()) == (0, "16")


def test_guard_rail_exit_code(write, capsys):
    path = write("big.json", {"entries": [[1] * 8 for _ in range(8)]})
    code, _, err = run(capsys, "enumerate", path)
    assert code == 2 and "error" in err


def test_bad_input_exit_code(write, capsys):
    code, _, _ = run(capsys, "det", write("ragged.json", {"entries": [[1, 2], [3]]}))
    assert code == 1


def test_verify_command(capsys):
    code, out, _ = run(capsys, "verify", "--seed", "42", "--cases", "500", "--suite", "move-arc")
    assert code == 0 and "500/500 passed" in out


def test_module_entry_point(write):
    path = write("eye.csv", "2,0\n0,3\n")
    proc = subprocess.run([sys.executable, "-m", "treedet", "det", path], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "6"
