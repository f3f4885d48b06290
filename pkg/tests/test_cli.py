from __future__ import annotations

import json

import pytest

from hyperx.cli import main, parse_duration
from hyperx.covering import Covering, Rectangle
from hyperx.sat import parse_dimacs


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_usage_errors_exit_3(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["rc"])
    assert exc.value.code == 3
    assert main(["rc", "--r", "3"]) == 3
    assert main(["bounds", "--n", "3", "--k", "5"]) == 3


def test_durations():
    assert parse_duration("1800s") == 1800
    assert parse_duration("30m") == 1800
    assert parse_duration("2") == 2


def test_slack_and_cover_roundtrip(capsys, tmp_path):
    slack = tmp_path / "slack.json"
    code, _ = run(capsys, "slack", "--n", "4", "--k", "2", "--out", str(slack))
    assert code == 0
    cover = tmp_path / "cover.json"
    code, out = run(capsys, "rc", "--slack", str(slack), "--r", "6", "--cover-out", str(cover))
    assert code == 0 and json.loads(out)["status"] == "SAT"
    code, out = run(capsys, "cover", "verify", "--slack", str(slack), "--cover", str(cover))
    assert code == 0 and json.loads(out)["ok"]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(Covering((Rectangle((0,), (0,)),)).to_json()))
    code, _ = run(capsys, "cover", "verify", "--slack", str(slack), "--cover", str(bad))
    assert code == 1


def test_rc_expectation(capsys):
    code, out = run(capsys, "rc", "--n", "4", "--k", "2", "--r", "5", "--expect", "unsat")
    assert code == 0 and json.loads(out)["vars"] == 120
    code, _ = run(capsys, "rc", "--n", "4", "--k", "2", "--r", "5", "--expect", "sat")
    assert code == 1


def test_rc_timeout_exit_2(capsys):
    code, out = run(capsys, "rc", "--n", "6", "--k", "2", "--r", "11", "--timeout", "0")
    assert code == 2 and json.loads(out)["status"] == "TIMEOUT"


def test_emit_dimacs(capsys, tmp_path):
    path = tmp_path / "f.cnf"
    code, out = run(capsys, "rc", "--n", "6", "--k", "3", "--r", "11", "--emit-dimacs", str(path))
    assert code == 0 and json.loads(out)["vars"] == 1320
    nvars, clauses = parse_dimacs(path.read_text())
    assert nvars == 1320 and len(clauses) == json.loads(out)["clauses"]


def test_import_model(capsys, tmp_path):
    from hyperx.hypersimplex import slack_matrix_standard
    from hyperx.sat import encode_rc, solve

    f = encode_rc(slack_matrix_standard((4, 2)), 6, symmetry=True)
    model = tmp_path / "model.txt"
    model.write_text("v " + " ".join(map(str, solve(f).model)) + " 0\n")
    code, out = run(capsys, "rc", "--n", "4", "--k", "2", "--r", "6", "--import-model", str(model))
    assert code == 0 and json.loads(out)["rectangles"] == 6
    model.write_text("v 0\n")
    code, _ = run(capsys, "rc", "--n", "4", "--k", "2", "--r", "6", "--import-model", str(model))
    assert code == 1


def test_grrc_special52(capsys):
    code, out = run(capsys, "grrc", "--special52", "--r", "9", "--expect", "unsat")
    info = json.loads(out)
    assert code == 0 and info["vars"] == 450 and info["status"] == "UNSAT"


def test_cover_random_and_greedy(capsys):
    code, out = run(capsys, "cover", "random", "--n", "8", "--k", "3", "--seed", "4")
    assert code == 0 and json.loads(out)["success"]
    code, out = run(capsys, "cover", "greedy", "--n", "5", "--k", "2")
    assert code == 0 and json.loads(out)["rectangles"] <= 10


def test_realize(capsys, tmp_path):
    out_path = tmp_path / "poly.json"
    code, out = run(capsys, "realize", "--singular62", "--check-generic", "--out", str(out_path))
    info = json.loads(out)
    assert code == 0 and info["f_generic"] and not info["g_generic"] and info["principal_minors"]
    code, out = run(capsys, "slack", "--poly", str(out_path))
    assert code == 0 and json.loads(out)["support"] == 6 * 15


def test_extend(capsys):
    code, out = run(capsys, "extend", "delta52")
    assert code == 0 and json.loads(out)["facets"] == 9
    code, out = run(capsys, "extend", "sq-oct")
    assert code == 0 and json.loads(out)["octagon_vertices"] == 8


def test_hull(capsys, tmp_path):
    pts = tmp_path / "pts.json"
    pts.write_text(json.dumps([[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1], ["1/5", "1/5", "1/5"]]))
    code, out = run(capsys, "hull", "--points", str(pts))
    assert code == 0 and json.loads(out) == {"affine_dim": 3, "facets": 4, "vertices": 4}


def test_reproduce_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["reproduce", "thm11-42", "--json-out", str(a)]) == 0
    assert main(["reproduce", "thm11-42", "--json-out", str(b)]) == 0
    for name in ("cover.json", "cube-cover.json", "search.json"):
        assert (a / "thm11-42" / name).read_bytes() == (b / "thm11-42" / name).read_bytes()
    manifest = json.loads((a / "manifest.json").read_text())
    assert all(c["certificate"] for c in manifest["outcome"]["thm11-42"])


def test_reproduce_emit_only(capsys, tmp_path):
    code = main(["reproduce", "thm11-63", "--external-solver-dimacs", str(tmp_path)])
    assert code == 2
    assert (tmp_path / "thm11-63-rc-r11.cnf").exists()
