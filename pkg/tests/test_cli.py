from __future__ import annotations

import io
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from hyperloci import classify as cl
from hyperloci.cli import main

jsonschema = pytest.importorskip("jsonschema")
SCHEMAS = Path(__file__).resolve().parent.parent / "docs" / "schema"


def run(*argv: str) -> tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    try:
        code = main(list(argv), out, err)
    except SystemExit as exc:
        code = exc.code
    return code, out.getvalue(), err.getvalue()


def validate(kind: str, text: str) -> dict:
    doc = json.loads(text)
    jsonschema.validate(doc, json.loads((SCHEMAS / f"{kind}.schema.json").read_text()))
    return doc


def test_classify_json_genus_four():
    code, out, _ = run("classify", "--genus", "4", "--format", "json")
    assert code == 0
    doc = validate("classify", out)
    assert len(doc["rows"]) == 12


def test_classify_markdown_genus_two():
    code, out, _ = run("classify", "--genus", "2", "--format", "markdown")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("| # | G | Γ | δ |")
    assert len(lines) == 2 + len(cl.enumerate_loci(2))


@pytest.mark.parametrize("argv", [("classify", "--genus", "1"), ("lattice", "--genus", "50"),
                                  ("fixedfield", "--group", "B7"), ("fixedfield", "--group", "D"),
                                  ("classify", "--genus", "4", "--format", "xml"), ()])
def test_usage_errors_exit_two(argv):
    assert run(*argv)[0] == 2


def test_equation_row_one():
    code, out, _ = run("equation", "--genus", "2", "--case", "1", "--n", "2")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "y^2 = (x^2 - l1)*(x^2 - l2)*(x^2 - l3)"
    assert lines[1] == "# normalized: y^2 = (x^2 - 1)*(x^2 - l1)*(x^2 - l2)"


def test_equation_inadmissible_exit_three():
    code, _, err = run("equation", "--genus", "4", "--case", "13")
    assert code == 3 and "delta not integral" in err
    code, _, err = run("equation", "--genus", "4", "--case", "1", "--n", "5")
    assert code == 3 and "n < g+1" in err


def test_equation_specialize():
    code, out, _ = run("equation", "--genus", "5", "--case", "10", "--specialize", "7")
    assert code == 0
    assert out.splitlines()[0] == "y^2 = x^12 - 7*x^10 - 33*x^8 + 14*x^6 - 33*x^4 - 7*x^2 + 1"
    code, _, err = run("equation", "--genus", "2", "--case", "1", "--n", "2", "--specialize", "1", "4")
    assert code == 3 and "degenerate" in err


def test_equation_json_and_verify():
    code, out, _ = run("equation", "--genus", "4", "--case", "6", "--n", "2", "--format", "json", "--verify", "5")
    assert code == 0
    doc = validate("equation", out)
    assert doc["verified_trials"] == 5 and doc["delta"] == 2


def test_equation_expand():
    code, out, _ = run("equation", "--genus", "2", "--case", "6", "--n", "2", "--expand")
    assert code == 0 and out.splitlines()[1].startswith("y^2 = x^5")


def test_lattice_formats():
    code, dot, _ = run("lattice", "--genus", "4", "--format", "dot")
    assert code == 0 and dot.count("->") == 15
    code, csv_text, _ = run("lattice", "--genus", "4", "--format", "csv")
    assert code == 0 and len(csv_text.strip().splitlines()) == 13
    code, js, _ = run("lattice", "--genus", "4", "--format", "json")
    assert code == 0 and len(validate("lattice", js)["nodes"]) == 12


def test_lattice_strict_undetermined_exit_four():
    assert run("--budget", "1", "lattice", "--genus", "5", "--strict")[0] == 4
    assert run("--budget", "1", "lattice", "--genus", "5")[0] == 0


def test_fixedfield_dihedral():
    code, out, _ = run("fixedfield", "--group", "D", "--n", "3")
    assert code == 0
    assert "z = (x^6 + 1)/(x^3)" in out
    assert "branch points: {-2, 2, infinity}" in out


def test_fixedfield_icosahedral_json():
    code, out, _ = run("fixedfield", "--group", "A5", "--format", "json")
    assert code == 0
    doc = validate("fixedfield", out)
    assert sorted(doc["branch_points"]) == ["0", "1728", "infinity"]


def test_count():
    code, out, _ = run("count", "--genus", "4")
    assert code == 0 and "n1 = 8" in out and "Z=5" in out and "note:" in out
    code, out, _ = run("count", "--genus", "4", "--format", "json")
    assert validate("count", out)["formulas"]["n1"] == 8


def test_byte_determinism_and_budget_env():
    argv = [sys.executable, "-m", "hyperloci.cli", "lattice", "--genus", "6", "--format", "csv"]
    env = dict(os.environ, HYPERLOCI_BUDGET="100000")
    a = subprocess.run(argv, capture_output=True, env=env, check=True).stdout
    b = subprocess.run(argv, capture_output=True, env=env, check=True).stdout
    assert a == b and a
    tiny = subprocess.run(argv + ["--strict"], capture_output=True, env=dict(env, HYPERLOCI_BUDGET="1"))
    assert tiny.returncode == 4
