import json
import subprocess
import sys

import pytest

from qshuffle import braidrep as B
from qshuffle.cli import main, render_scalar
from qshuffle.coeff import Cyclotomic


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_verify_efk_p3(capsys):
    code, out = run(capsys, "verify", "--suite", "efk", "--p", "3")
    data = json.loads(out)
    assert code == 0 and data["passed"]
    assert "wall_time" in data["results"][0]


def test_verify_strata_single_pair(capsys):
    code, out = run(capsys, "verify", "--suite", "strata-d2", "--m", "1", "--n", "2", "--p", "3")
    assert code == 0
    ids = [i["identity"] for i in json.loads(out)["results"][0]["identities"]]
    assert ids.count("d-squared") == 1


def test_hopf_degree_zero_is_one_trivial_case(capsys):
    code, out = run(capsys, "verify", "--suite", "hopf", "--max-degree", "0")
    data = json.loads(out)
    assert code == 0 and data["passed"] and data["cases"] == 1


def test_output_is_deterministic(capsys):
    args = ("verify", "--suite", "antipode", "--p", "2", "--no-timing", "--max-degree", "3")
    assert run(capsys, *args) == run(capsys, *args)


def test_braiding_file_exit_codes(tmp_path, capsys):
    good = tmp_path / "good.json"
    good.write_text(json.dumps({"dim": 2, "field": "Q", "matrix": B.JORDANIAN}))
    assert run(capsys, "verify", "--suite", "antipode", "--braiding", str(good),
               "--max-degree", "3")[0] == 0
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"dim": 2, "field": "Q",
                               "matrix": [[1, 1, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]}))
    assert run(capsys, "verify", "--suite", "hopf", "--braiding", str(bad))[0] == 3
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    assert run(capsys, "verify", "--suite", "hopf", "--braiding", str(broken))[0] == 2
    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps({"dim": 2}))
    assert run(capsys, "verify", "--suite", "hopf", "--braiding", str(wrong))[0] == 2
    assert run(capsys, "verify", "--suite", "hopf", "--braiding", str(tmp_path / "missing.json"))[0] == 2


def test_bad_arguments_exit_2(capsys):
    assert main(["verify", "--suite", "nope"]) == 2
    assert main(["fusion", "--p", "3", "--lhs", "X:9:0", "--rhs", "X:1:0"]) == 2
    assert main(["fusion", "--p", "3", "--lhs", "Q:1:0", "--rhs", "X:1:0"]) == 2
    capsys.readouterr()


def test_fusion_single_product(capsys):
    code, out = run(capsys, "fusion", "--p", "3", "--lhs", "X:2:0", "--rhs", "X:3:0")
    assert code == 0
    assert json.loads(out) == {"summands": [{"kind": "P", "r": 2, "nu": 0, "mult": 1}]}


def test_fusion_markdown_and_empty(capsys):
    code, out = run(capsys, "fusion", "--p", "3", "--lhs", "X:3:0", "--rhs", "X:3:0", "--format", "md")
    assert code == 0 and "P_1(0) + X_3(0)" in out
    code, out = run(capsys, "fusion", "--p", "2", "--lhs", "", "--rhs", "X:1:0")
    assert code == 0 and json.loads(out)["rows"] == []


def test_fusion_full_table_p2(capsys):
    code, out = run(capsys, "fusion", "--p", "2")
    data = json.loads(out)
    assert code == 0 and data["all_match"] and len(data["rows"]) == 64
    row = [r for r in data["rows"] if r["lhs"] == "X:1:0" and r["rhs"] == "X:1:0"][0]
    assert row["summands"] == [{"kind": "X", "r": 1, "nu": 0, "mult": 1}]


def test_strata_command(capsys):
    code, out = run(capsys, "strata", "--m", "1", "--n", "2", "--check-d2")
    data = json.loads(out)
    assert code == 0 and data["d2_zero"] is True
    assert len(data["cells"]["4"]) == data["top_cells"] == 3
    code, out = run(capsys, "strata", "--m", "0", "--n", "2", "--k", "3")
    assert list(json.loads(out)["cells"]) == ["3"]


def test_nichols_command_and_env(capsys, monkeypatch):
    code, out = run(capsys, "nichols", "--p", "3")
    assert json.loads(out) == {"dims": [1, 1, 1, 0]}
    monkeypatch.setenv("NICHOLS_MAX_DEGREE", "1")
    code, out = run(capsys, "nichols", "--p", "3")
    assert json.loads(out) == {"dims": [1, 1]}
    monkeypatch.setenv("NICHOLS_MAX_DEGREE", "x")
    assert run(capsys, "nichols", "--p", "3")[0] == 2


def test_braid_eval_renders_phases(capsys):
    code, out = run(capsys, "braid-eval", "--spaces", "X X", "--word", "1", "--p", "3")
    data = json.loads(out)
    assert code == 0
    assert data["blocks"][0]["entries"] == [[0, 0, "q^2"]]


def test_render_scalar():
    assert render_scalar(Cyclotomic.zeta(12, 4)) == "q^2"
    assert render_scalar(Cyclotomic.const(12, 1)) == "q^0"
    assert isinstance(render_scalar(Cyclotomic.zeta(12, 1)), dict)
    assert isinstance(render_scalar(Cyclotomic.zeta(12, 1) + 1), dict)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qshuffle", "nichols", "--p", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"dims": [1, 1, 0]}
