import json
import subprocess
import sys

import pytest

from quadkoszul.cli import main
from quadkoszul.operads import builtin, parse_spec, quadratic_dual


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_dims_table(capsys):
    code, out, _ = run(capsys, "dims", "--operad", "dend", "--max-arity", "5", "--format", "json")
    assert code == 0
    rows = json.loads(out)
    assert [r["dim"] for r in rows] == [2, 5, 14, 42]
    assert [r["dual_dim"] for r in rows] == [2, 3, 4, 5]


def test_count_quad_dims(capsys):
    code, out, _ = run(capsys, "count", "--quad-dims", "--to", "5", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["n,d_n", "2,4", "3,23", "4,156", "5,1162"]


def test_count_hypercube(capsys):
    code, out, _ = run(capsys, "count", "--hypercube", "--m", "3", "--to", "4", "--format", "json")
    assert code == 0
    assert sum(r["count"] for r in json.loads(out) if r["n"] == 4) == 64


def test_koszul_json(tmp_path, capsys):
    out = tmp_path / "out.json"
    code, _, _ = run(capsys, "koszul", "--operad", "quad", "--max-arity", "4", "--json", str(out), "--no-timing")
    assert code == 0
    data = json.loads(out.read_text())
    assert data["koszul"] is True and data["elapsed_ms"] == 0
    first = out.read_text()
    run(capsys, "koszul", "--operad", "quad", "--max-arity", "4", "--json", str(out), "--no-timing", "--workers", "1")
    assert out.read_text() == first


def test_koszul_failure_exit_code(tmp_path, capsys):
    spec = tmp_path / "anti.json"
    spec.write_text(json.dumps({"name": "anti", "generators": ["a"], "relations": [[
        {"shape": "L", "root": 0, "upper": 0, "coeff": "1"},
        {"shape": "R", "root": 0, "upper": 0, "coeff": "1"}]]}))
    code, out, _ = run(capsys, "koszul", "--spec", str(spec), "--max-arity", "5")
    assert code == 1
    assert json.loads(out)["koszul"] is False


@pytest.mark.parametrize(
    "argv",
    [
        ["koszul", "--spec", "missing.json", "--max-arity", "3"],
        ["koszul", "--operad", "octo", "--max-arity", "3"],
        ["koszul", "--operad", "dend", "--max-arity", "1"],
        ["koszul", "--operad", "dend", "--spec", "x.json", "--max-arity", "3"],
        ["nonsense"],
        ["bar", "--operad", "dend"],
    ],
)
def test_usage_errors(argv, capsys):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err


def test_malformed_spec_is_usage_error(tmp_path, capsys):
    spec = tmp_path / "bad.json"
    spec.write_text("{")
    code, _, err = run(capsys, "dims", "--spec", str(spec))
    assert code == 2 and "JSON" in err


def test_dual_and_square_emit_specs(capsys):
    code, out, _ = run(capsys, "dual", "--operad", "dend")
    assert code == 0
    assert parse_spec(out).relations == quadratic_dual(builtin("dend")).relations
    code, out, _ = run(capsys, "square", "--left", "dend", "--right", "dend")
    assert code == 0
    sq = parse_spec(out)
    assert (len(sq.generators), len(sq.relations)) == (4, 9)
    assert sq.relations == builtin("quad").relations


def test_bar_split_gf(capsys):
    code, out, _ = run(capsys, "bar", "--operad", "dend", "--n", "4")
    assert code == 0 and json.loads(out)["dims"] == [14, 40, 30, 4]
    code, out, _ = run(capsys, "split", "--kind", "quad", "--n", "3")
    assert code == 0 and json.loads(out)["passed"]
    code, out, _ = run(capsys, "gf", "--operad", "quad", "--order", "5")
    assert code == 0 and json.loads(out)["formula"] == [1, 4, 23, 156, 1162]


def test_tree_dot_ids_are_keys(capsys):
    code, out, _ = run(capsys, "tree-dot", "--n", "3")
    assert code == 0
    assert '"((..).)" -> "(...)"' not in out  # arcs go toward more vertices
    assert '"(...)" -> "((..).)"' in out


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "quadkoszul", "count", "--quad-dims", "--to", "3"], capture_output=True, text=True)
    assert r.returncode == 0
    assert "23" in r.stdout
