"""CLI JSON reports validate against the shipped schema."""

import json
import pathlib
import subprocess
import sys

import pytest

jsonschema = pytest.importorskip("jsonschema")

SCHEMA = json.loads(
    (pathlib.Path(__file__).resolve().parent.parent
     / "schemas" / "report.schema.json").read_text()
)


def run_json(*args):
    res = subprocess.run(
        [sys.executable, "-m", "dottedtl.cli", *args, "--json"],
        capture_output=True, text=True,
    )
    return json.loads(res.stdout)


@pytest.mark.parametrize("args", [
    ("dtl-verify", "--n-max", "2"),
    ("jw", "2"),
    ("quiver", "--n-max", "2"),
    ("kirby-certify", "--k", "0", "--levels", "2"),
    ("decompose-b4", "--depth", "8"),
    ("decompose-b2s2", "--depth", "8"),
    ("eval-expr", "dot ; dot"),
])
def test_report_matches_schema(args):
    rep = run_json(*args)
    jsonschema.validate(rep, SCHEMA)
    assert rep["ok"] is True
