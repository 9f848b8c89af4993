from __future__ import annotations

import csv
import io
import json
import subprocess
import sys

import pytest

from kolsym import cli

PASSING_SUITES = [s for s in cli.SUITES if s != "algebra"]


@pytest.mark.parametrize("suite", PASSING_SUITES)
def test_suite_passes_and_is_deterministic(suite):
    a = cli.run(["verify", suite, "--samples", "40"])
    b = cli.run(["verify", suite, "--samples", "40"])
    assert a[0] == cli.EXIT_OK
    assert a[1] == b[1]
    assert json.loads(a[1])["passed"] is True


def test_algebra_suite_reports_levi_failure():
    code, text, _ = cli.run(["verify", "algebra"])
    assert code == cli.EXIT_FAIL
    rep = json.loads(text)
    failed = [c["name"] for c in rep["checks"] if not c["passed"]]
    assert failed and all("levi" in n for n in failed)


def test_seed_changes_sampling_but_not_verdict():
    a = cli.run(["verify", "solutions", "--samples", "30", "--seed", "1"])
    b = cli.run(["verify", "solutions", "--samples", "30", "--seed", "2"])
    assert a[0] == b[0] == cli.EXIT_OK
    assert a[1] != b[1]


@pytest.mark.parametrize("argv", [
    ["verify", "nope"],
    ["eval", "--family", "nope", "--grid", "t=1"],
    ["eval", "--family", "s6.airy23", "--grid", "t=1:2"],
    ["eval", "--family", "s6.airy23", "--grid", "q=1"],
    ["eval", "--family", "s6.airy23", "--grid", "t=1", "--param", "C9=1"],
    ["kramers", "gen", "--variant", "k34", "--gamma", "1", "--family", "heatisq.euler", "--grid", "t=1"],
    ["verify", "group", "--config", "/nonexistent.json"],
    [],
])
def test_usage_errors_exit_2(argv):
    assert cli.run(argv)[0] == cli.EXIT_USAGE


def test_eval_airy_grid():
    code, text, _ = cli.run(["eval", "--family", "s6.airy23", "--grid", "t=1,x=-1:1:5,y=0:1:5"])
    assert code == cli.EXIT_OK
    rows = list(csv.reader(io.StringIO(text)))
    assert tuple(rows[0]) == cli.CSV_HEADER
    assert len(rows) == 26
    assert all(float(r[-1]) <= 1e-8 for r in rows[1:])


def test_eval_json_format():
    code, text, _ = cli.run(["eval", "--family", "fundamental", "--grid", "t=1,x=0,y=0:1:3", "--format", "json"])
    data = json.loads(text)
    assert code == cli.EXIT_OK and data["family"] == "fundamental" and len(data["rows"]) == 3


@pytest.mark.parametrize("variant,gamma", [("k34", 1.0), ("k316", -0.5)])
def test_kramers_gen(variant, gamma):
    code, text, _ = cli.run(["kramers", "gen", "--variant", variant, "--gamma", str(gamma),
                             "--family", "s6.exp22", "--grid", "t=-0.5:0.5:3,x=0.5:2:3,y=0.5:2:3"])
    rows = list(csv.reader(io.StringIO(text)))
    assert code == cli.EXIT_OK and len(rows) == 28


def test_manifest_lists_families():
    code, text, _ = cli.run(["manifest"])
    assert code == cli.EXIT_OK
    assert len(json.loads(text)["families"]) >= 18


def test_config_file_and_out(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"seed": 7, "samples": 30}))
    out = tmp_path / "rep.json"
    assert cli.main(["verify", "heatisq", "--config", str(cfg), "--out", str(out)]) == cli.EXIT_OK
    assert json.loads(out.read_text())["passed"] is True


def test_bad_config_keys(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"colour": "red"}))
    assert cli.run(["verify", "group", "--config", str(cfg)])[0] == cli.EXIT_USAGE


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "kolsym.cli", "manifest"], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["families"]
