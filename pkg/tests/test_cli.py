"""Command-line front end: exit codes, output shape, determinism."""

import json
import subprocess
import sys


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "dottedtl.cli", *args],
        capture_output=True, text=True,
    )


def test_verify_passes():
    res = run_cli("dtl-verify", "--params", "0,0", "--n-max", "3")
    assert res.returncode == 0
    assert res.stdout.strip().endswith("PASS")


def test_verify_json():
    res = run_cli("dtl-verify", "--params", "1,1/2", "--n-max", "2", "--json")
    assert res.returncode == 0
    rep = json.loads(res.stdout)
    assert rep["ok"]
    assert rep["params"] == ["1", "1/2"]


def test_eval_expr_normalization():
    res = run_cli("eval-expr", "dot ; dot")
    assert res.returncode == 0
    assert res.stdout.strip() == "(E1)*(dot) + (-E2)*(id)"


def test_eval_expr_usage_error():
    res = run_cli("eval-expr", "dot ;; id")
    assert res.returncode == 2
    assert "position" in res.stderr


def test_unknown_command_is_usage_error():
    res = run_cli("frobnicate")
    assert res.returncode == 2


def test_bad_params_is_usage_error():
    res = run_cli("dtl-verify", "--params", "one,two")
    assert res.returncode == 2


def test_jw_command():
    res = run_cli("jw", "2", "--json")
    assert res.returncode == 0
    rep = json.loads(res.stdout)
    assert rep["ok"]
    assert rep["diagram_form"] == "(id|id) + (-1/2)*(cap ; cup)"


def test_kirby_command():
    res = run_cli("kirby-certify", "--k", "0", "--levels", "3",
                  "--a2", "1/2", "--json")
    assert res.returncode == 0
    rep = json.loads(res.stdout)
    assert rep["ok"] and rep["leibniz_closure"]


def test_b4_command():
    res = run_cli("decompose-b4", "--depth", "12", "--json")
    assert res.returncode == 0
    rep = json.loads(res.stdout)
    assert rep["ok"]


def test_b2s2_summary_file(tmp_path):
    out = tmp_path / "summary.json"
    res = run_cli("decompose-b2s2", "--depth", "8", "--summary", str(out))
    assert res.returncode == 0
    rep = json.loads(out.read_text())
    assert rep["status"] == "pass"
    assert rep["depth"] == 8
    assert isinstance(rep["claims"], list)


def test_reports_are_deterministic():
    a = run_cli("dtl-verify", "--params", "0,1/2", "--n-max", "3", "--json")
    b = run_cli("dtl-verify", "--params", "0,1/2", "--n-max", "3", "--json")
    assert a.stdout == b.stdout
    c = run_cli("decompose-b4", "--depth", "12", "--json")
    d = run_cli("decompose-b4", "--depth", "12", "--json")
    assert c.stdout == d.stdout
