import json

import pytest

from vecconf.arrangement.vectors import load_config
from vecconf.cli import run


@pytest.fixture
def cyclic6_3(tmp_path):
    path = tmp_path / "c.json"
    assert run(["gen", "--kind", "cyclic", "--n", "6", "--r", "3", "-o", str(path)]) == 0
    return path


def _json_out(capsys):
    return json.loads(capsys.readouterr().out)


def test_gen_writes_configuration(cyclic6_3):
    V = load_config(cyclic6_3)
    assert (V.n, V.r) == (6, 3)
    assert V.column(6) == (1, 5, 25)


def test_gen_with_params_and_random(tmp_path, capsys):
    assert run(["gen", "--kind", "cocyclic", "--n", "3", "--r", "2", "--params", "0,1/2,2"]) == 0
    assert _json_out(capsys)["vectors"] == [["-1", "0"], ["1", "1/2"], ["-1", "-2"]]
    assert run(["gen", "--kind", "random", "--n", "5", "--r", "3", "--seed", "4", "--pointed"]) == 0
    assert all(col[0] == "1" for col in _json_out(capsys)["vectors"])


def test_faces_row_sums(cyclic6_3, capsys):
    assert run(["faces", str(cyclic6_3)]) == 0
    data = _json_out(capsys)
    assert (data["d"], data["n"]) == (2, 6)
    assert [sum(row) for row in data["rows"]] == [32, 60, 30]


def test_faces_patterns_and_csv(examples_dir, capsys):
    config = str(examples_dir / "three_vectors.json")
    assert run(["faces", config, "--patterns"]) == 0
    data = _json_out(capsys)
    assert data["rows"] == [[1, 2, 2, 1], [2, 2, 2, 0]]
    assert len(data["patterns"]) == 12 and "+++" in data["patterns"]
    assert run(["faces", config, "--format", "csv"]) == 0
    assert capsys.readouterr().out.splitlines() == ["s,0,1,2,3", "0,1,2,2,1", "1,2,2,2,0"]


def test_faces_text_report(cyclic6_3, capsys):
    assert run(["faces", str(cyclic6_3), "--format", "text"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("# f-matrix\n")
    assert "Faces: 122" in out and "Pointed: True" in out


def test_fstar_both_oracles(examples_dir, capsys):
    assert run(["fstar", str(examples_dir / "three_vectors.json"), "--oracle", "both", "--patterns"]) == 0
    data = _json_out(capsys)
    assert data["patterns"] == ["--+", "++-"]
    assert data["rows"][3] == [0, 1, 1, 0]


def test_g_both_routes_agree(examples_dir, capsys):
    argv = ["g", "--from", str(examples_dir / "cocyclic5_3.json"), "--to", str(examples_dir / "cyclic5_3.json")]
    assert run(argv + ["--via", "both"]) == 0
    assert _json_out(capsys) == {"n": 5, "r": 3, "small": [[1], [2]]}
    assert run(argv + ["--full"]) == 0
    assert _json_out(capsys)["g"] == [[1, 0, -1], [2, 0, -2], [-2, 0, 2], [-1, 0, 1]]
    assert run(argv + ["--format", "text"]) == 0
    text = capsys.readouterr().out
    assert "Route: algebraic" in text
    assert "= -g[r-j][k] = -g[j][n-r-k] = g[r-j][n-r-k]" in text


def test_motion_trace(examples_dir, capsys):
    argv = ["motion", "--from", str(examples_dir / "motion_source.json"),
            "--to", str(examples_dir / "motion_target.json")]
    assert run(argv + ["--trace"]) == 0
    trace = _json_out(capsys)
    assert [e["R"] for e in trace] == [[2, 3], [1, 3]]
    assert run(argv) == 0
    assert _json_out(capsys) == {"mutations": 2, "perturbed": False, "types": {"0,0": 1, "1,0": 1}}


def test_verify_single_relations(cyclic6_3, examples_dir, capsys):
    argv = ["verify", "--relation", "ds", "--relation", "antipodal", "--relation", "totals",
            str(cyclic6_3), str(examples_dir / "three_vectors.json")]
    assert run(argv) == 0
    reports = _json_out(capsys)
    assert len(reports) == 6
    assert all(r["holds"] and r["witness"] is None for r in reports)


def test_verify_pair_and_size_relations(examples_dir, capsys):
    pair = [str(examples_dir / "cocyclic5_3.json"), str(examples_dir / "cyclic5_3.json")]
    assert run(["verify", "--relation", "skew", "--relation", "gale-antisymmetry", *pair]) == 0
    assert [r["relation"] for r in _json_out(capsys)] == ["skew", "gale-antisymmetry"]
    assert run(["verify", "--relation", "closed-form", "--n", "5", "--r", "3"]) == 0
    assert _json_out(capsys)[0]["holds"]


def test_verify_failure_exits_one(capsys):
    assert run(["verify", "--relation", "span-dim", "--n", "6", "--r", "3", "--samples", "1"]) == 1
    (report,) = _json_out(capsys)
    assert not report["holds"] and "rank" in report["witness"]


def test_span_report(capsys):
    assert run(["span", "--n", "5", "--r", "3", "--seed", "3"]) == 0
    report = _json_out(capsys)
    assert report["achieved_rank"] == report["theoretical_dim"] == 2
    assert report["reached"] is True


@pytest.mark.parametrize("argv", [
    ["faces"],
    ["bogus"],
    ["faces", "x.json", "--format", "xml"],
    ["gen", "--kind", "cyclic", "--n", "5", "--r", "3", "--pointed"],
    ["gen", "--kind", "cyclic", "--n", "3", "--r", "2", "--params", "0,a,1"],
    ["verify", "--relation", "skew"],
    ["verify", "--relation", "closed-form"],
])
def test_usage_errors_exit_two(argv):
    assert run(argv) == 2


def test_input_errors_exit_two(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"r": 2, "n": 2, "vectors": [["1", "0"], ["0", 0.5]]}', encoding="utf-8")
    assert run(["faces", str(bad)]) == 2
    assert run(["faces", str(tmp_path / "missing.json")]) == 2


def test_verify_polynomial_forms(cyclic6_3, examples_dir, capsys):
    assert run(["verify", "--relation", "polytope-ds", str(cyclic6_3)]) == 0
    assert _json_out(capsys)[0]["relation"] == "polytope-dehn-sommerville"
    pair = [str(examples_dir / "cocyclic5_3.json"), str(examples_dir / "cyclic5_3.json")]
    assert run(["verify", "--relation", "g-polynomial", *pair]) == 0
    assert _json_out(capsys)[0]["holds"]


def test_verify_span_dim_checks_g_and_f(capsys):
    assert run(["verify", "--relation", "span-dim", "--n", "5", "--r", "3", "--seed", "3"]) == 0
    assert _json_out(capsys)[0]["holds"]
