from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from srank.cli import main, run

ROOT = Path(__file__).resolve().parents[1]
FIX = ROOT / "fixtures"
SCHEMA = json.loads((ROOT / "schema" / "report.schema.json").read_text())


def run_json(*argv):
    code, report = run([*argv, "--json"])
    return code, report


def test_sr_json_example(capsys):
    code, rep = run_json("sr", str(FIX / "F2_5.cmon"), "-e", "a")
    assert code == 0
    b = rep["results"]["sr"]
    assert b["lo"] == 5 and b["hi"]["n"] == 5 and b["pinned"]
    assert all(c["kind"] == "W12" for c in b["certificates"])
    printed = json.loads(capsys.readouterr().out)
    jsonschema.validate(printed, SCHEMA)


def test_eq_example(capsys):
    assert main(["eq", str(FIX / "F2_3.cmon"), "-e", "5a", "-e", "a+2b"]) == 0
    assert capsys.readouterr().out.strip() == "equal"


def test_eq_assert():
    assert main(["eq", str(FIX / "F2_3.cmon"), "-e", "b", "-e", "2a", "--assert"]) == 1
    assert main(["eq", str(FIX / "F2_3.cmon"), "-e", "b", "-e", "2a"]) == 0


def test_suite_exit_zero():
    code, rep = run_json("suite")
    assert code == 0 and rep["results"]["summary"]["passed"]
    jsonschema.validate(rep, SCHEMA)


@pytest.mark.parametrize("argv", [
    ["nf", "F5.cmon", "-e", "6a"],
    ["complete", "F2_7.cmon"],
    ["finite", "F6.cmon"],
    ["finite", "F3.cmon", "--cap", "10"],
    ["grade", "F2_3.cmon"],
    ["sr", "F1.cmon", "-e", "w", "--plus", "--predicates"],
    ["sr", "F6.ctab", "-e", "a"],
    ["props", "F5.cmon"],
    ["props", "F6.ctab"],
    ["quotient", "F6.ctab", "--kind", "power_some", "--S", "2"],
    ["quotient", "F6.cmon", "--kind", "o_ideal", "--ideal", "0,a,2 a"],
])
def test_reports_are_schema_valid_and_stable(argv, capsys):
    argv = [argv[0], str(FIX / argv[1]), *argv[2:]]
    code1, rep1 = run_json(*argv)
    code2, rep2 = run_json(*argv)
    assert code1 == code2 == 0
    jsonschema.validate(rep1, SCHEMA)
    assert json.dumps(rep1["results"], sort_keys=True) == json.dumps(rep2["results"], sort_keys=True)
    assert len(rep1["input"]["sha256"]) == 64


def test_quotient_result():
    _, rep = run_json("quotient", str(FIX / "F6.ctab"), "--kind", "power_some", "--S", "2")
    assert rep["results"]["classes"] == [["0"], ["a", "2a"]]


def test_verify_round_trip(tmp_path, capsys):
    _, rep = run_json("sr", str(FIX / "F5.cmon"), "-e", "a", "--plus")
    path = tmp_path / "r.json"
    path.write_text(json.dumps(rep))
    capsys.readouterr()
    assert main(["verify", str(path)]) == 0
    n = len(rep["results"]["sr"]["certificates"]) + len(rep["results"]["sr_plus"]["certificates"])
    assert n == 7
    assert capsys.readouterr().out.startswith(f"{n} certificate(s) verified")
    rep["results"]["sr"]["certificates"][0]["claim"] = "sr(a) >= 40"
    path.write_text(json.dumps(rep))
    assert main(["verify", str(path)]) == 2


def test_sr_assert():
    f = str(FIX / "F5.cmon")
    assert main(["sr", f, "-e", "a", "--assert", "4"]) == 0
    assert main(["sr", f, "-e", "a", "--assert", "3"]) == 1
    assert main(["sr", str(FIX / "F1.cmon"), "-e", "w", "--assert", "2"]) == 1
    assert main(["sr", str(FIX / "F6.ctab"), "-e", "a", "--assert", "inf"]) == 0


def test_props_assert():
    f = str(FIX / "F5.cmon")
    assert main(["props", f, "--assert", "separative"]) == 1
    assert main(["props", f, "--assert", "conical"]) == 0
    assert main(["props", f, "--assert", "refinement", "--require-verdict"]) == 3
    assert main(["props", f, "--assert", "bogus"]) == 2


def test_require_verdict_on_unpinned():
    # nmax too small to reach the value 7
    f = str(FIX / "F2_7.cmon")
    assert main(["sr", f, "-e", "a", "--nmax", "3"]) == 0
    assert main(["sr", f, "-e", "a", "--nmax", "3", "--require-verdict"]) == 3


def test_budget_exhaustion(tmp_path):
    p = tmp_path / "hard.cmon"
    p.write_text("gens a b c; rel 2a + b = c; rel a + 2c = b; rel 3b = a + c;\n")
    assert main(["complete", str(p), "--budget", "1"]) == 3


@pytest.mark.parametrize("argv", [
    ["sr", "missing.cmon", "-e", "a"],
    ["sr", "F3.cmon", "-e", "a -"],
    ["sr", "F3.cmon", "-e", "c"],
    ["eq", "F3.cmon", "-e", "a"],
    ["quotient", "F3.cmon", "--kind", "max_antisym", "--cap", "20"],
    ["quotient", "F6.ctab", "--kind", "o_ideal", "--ideal", "a"],
    ["quotient", "F6.ctab", "--kind", "power_all", "--S", "1"],
    ["sr", "F6.ctab", "-e", "b"],
])
def test_input_errors(argv, capsys):
    if argv[1] != "missing.cmon":
        argv = [argv[0], str(FIX / argv[1]), *argv[2:]]
    assert main(argv) == 2
    assert capsys.readouterr().err.startswith("error:")


def test_bad_table(tmp_path):
    p = tmp_path / "bad.ctab"
    p.write_text(json.dumps({"elements": ["0", "a", "b"], "zero": "0",
                             "table": [["0", "a", "b"], ["a", "b", "a"], ["b", "a", "a"]]}))
    assert main(["props", str(p)]) == 2


def test_unknown_flag():
    with pytest.raises(SystemExit) as exc:
        main(["sr", "x.cmon", "--frobnicate"])
    assert exc.value.code == 2


def test_console_script_relative_path():
    out = subprocess.run([sys.executable, "-m", "srank.cli", "sr", "fixtures/F2_5.cmon", "-e", "a"],
                         cwd=ROOT, capture_output=True, text=True)
    assert out.returncode == 0
    assert out.stdout.startswith("sr(a) = 5")
