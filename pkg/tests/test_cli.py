import csv
import io
import json
import subprocess
import sys

import pytest

from extlab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def table(capsys, *argv):
    code, out, _ = run(capsys, "table", *argv)
    assert code == 0
    return json.loads(out)


def test_g_cm_table(capsys):
    doc = table(capsys, "g_cm", "-m", "3")
    assert doc["window"] == ["[0]", "[1]", "[2]"]
    assert len(doc["entries"]) == 9
    assert doc["entries"][-1] == ["[2]", "[2]", 3]
    assert doc["carriers"] == {"domain": "C_3", "codomain": "Z"}


def test_c_alpha_table_entry(capsys):
    doc = table(capsys, "c_alpha", "-p", "2", "--alpha", "1,1", "--max-exp", "2")
    entries = {(u, v): val for u, v, val in doc["entries"]}
    assert entries["1/2^2 mod 1", "1/2^1 mod 1"] == 1
    assert entries["1/2^1 mod 1", "1/2^1 mod 1"] == -1
    assert doc["prime"] == 2 and doc["parameters"] == {"alpha": "1,1"}


def test_csv_format(capsys):
    code, out, _ = run(capsys, "table", "g_cm", "-m", "2", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    meta = [l for l in lines if l.startswith("#")]
    assert "# m=2" in meta
    rows = list(csv.reader(io.StringIO("\n".join(l for l in lines if not l.startswith("#")))))
    assert rows[0] == ["u", "v", "value"]
    assert rows[1:] == [["[0]", "[0]", "0"], ["[0]", "[1]", "0"], ["[1]", "[0]", "0"], ["[1]", "[1]", "2"]]


def test_empty_window_gives_header_only(capsys):
    doc = table(capsys, "c_alpha", "--alpha", "1", "--window", "")
    assert doc["window"] == [] and doc["entries"] == []
    code, out, _ = run(capsys, "table", "v1", "--pi", "1", "--window", "", "--format", "csv")
    assert code == 0 and out.splitlines()[-1] == "u,v,value"


def test_explicit_window(capsys):
    doc = table(capsys, "c_alpha", "--alpha", "1,1", "--window", "1/2 mod 1,1/4 mod 1")
    assert doc["window"] == ["1/2^1 mod 1", "1/2^2 mod 1"]
    doc = table(capsys, "k2", "--alpha", "1", "--window", "(0; 1/2),(1; 0)")
    assert ["(0; 1/2^1)", "(0; 1/2^1)", "(-1; 1)"] in doc["entries"]


@pytest.mark.parametrize(
    "argv",
    [
        ("table", "v1", "--pi", "1,1"),
        ("table", "v2", "-p", "3", "--max-exp", "1", "--max-coef", "1"),
        ("table", "k2", "-p", "3", "--max-exp", "1", "--max-coef", "1"),
        ("table", "c_alpha", "-p", "3", "--seed", "4"),
    ],
)
def test_tables_are_deterministic(capsys, argv, tmp_path):
    code1, out1, _ = run(capsys, *argv)
    code2, out2, _ = run(capsys, *argv)
    assert code1 == code2 == 0 and out1 == out2 and out1
    path = tmp_path / "t.json"
    assert main(list(argv) + ["-o", str(path)]) == 0
    assert path.read_text() == out1


def test_v_tables_record_pi(capsys):
    doc = table(capsys, "v2", "--pi", "1,1", "--max-exp", "2", "--max-coef", "1")
    assert doc["parameters"] == {"pi": "1,1"}
    entries = {(u, v): val for u, v, val in doc["entries"]}
    assert entries["1/2^1", "1/2^2"] == -1


def test_verify_roundtrip(capsys):
    code, out, _ = run(capsys, "verify", "roundtrip", "-m", "12")
    assert code == 0
    rep = json.loads(out)
    assert rep["ok"] and rep["suite"] == "roundtrip"


def test_verify_lift(capsys):
    code, out, _ = run(capsys, "verify", "lift", "-p", "2", "--alpha", "2,-1", "--depth", "20")
    assert code == 0
    code, out, _ = run(capsys, "verify", "lift", "-p", "2", "--alpha", "1", "--depth", "20")
    assert code == 1
    rep = json.loads(out)
    assert not rep["ok"]
    assert rep["checks"][0]["counterexample"] == {"failure_depth": 1}


@pytest.mark.parametrize("suite", ["cocycle", "equivalence", "extension", "api", "kernel"])
def test_verify_suites_pass(capsys, suite):
    code, out, _ = run(capsys, "verify", suite, "-p", "2", "--max-exp", "2", "--max-coef", "1", "--depth", "6")
    assert code == 0, out
    assert json.loads(out)["ok"]


def test_verify_cocycle_reports_counts(capsys):
    code, out, _ = run(capsys, "verify", "cocycle", "-p", "3", "--max-exp", "1", "--max-coef", "1", "-m", "4")
    rep = json.loads(out)
    assert code == 0
    names = [c["name"] for c in rep["checks"]]
    assert sum(n.startswith("c_alpha") for n in names) == 5
    assert sum(n.startswith("v1") for n in names) == 3
    assert sum(n.startswith("g_cm") for n in names) == 4


@pytest.mark.parametrize(
    "argv",
    [
        ("table", "g_cm", "-p", "4"),
        ("table", "c_alpha", "--alpha", "2,1"),
        ("table", "k2", "--alpha", "-1"),
        ("table", "v1", "--pi", "0,1"),
        ("table", "g_cm", "-m", "0"),
        ("table", "c_alpha", "--max-exp", "0"),
        ("verify", "lift", "--depth", "0"),
        ("table", "c_alpha", "--window", "1/3 mod 1"),
        ("table", "nope"),
        ("verify", "cocycle", "--alpha", "x"),
        ("frobnicate",),
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "extlab", "table", "g_cm", "-m", "3", "--format", "csv"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert res.returncode == 0
    assert res.stdout.splitlines()[-1] == "[2],[2],3"
