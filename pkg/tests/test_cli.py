import json
from pathlib import Path

import jsonschema
import pytest

from descyc.cli import main

SCHEMA_PATH = Path(__file__).resolve().parent.parent / "docs" / "scan_report.schema.json"
GOLDEN_DIR = Path(__file__).resolve().parent.parent / "golden"


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_compute_values(capsys):
    for argv, expected in [
        (("compute", "beta-cyc", "--n", "6", "--set", "3"), "3"),
        (("compute", "alpha-cyc", "--n", "3", "--set", "1"), "1"),
        (("compute", "alt-cycles", "--n", "4"), "1"),
        (("compute", "beta", "--n", "1", "--set", ""), "1"),
        (("compute", "alpha", "--n", "6", "--set", "1,2"), "30"),
        (("compute", "eulerian", "--n", "4", "--k", "2"), "11"),
        (("compute", "eulerian-cyc", "--n", "4", "--k", "2"), "3"),
        (("compute", "euler", "--n", "8"), "1385"),
        (("compute", "euler-k", "--n", "6", "--k", "3"), "19"),
        (("compute", "kz-cycles", "--n", "6", "--k", "3"), "3"),
        (("compute", "gamma", "--n", "6"), "349"),
        (("compute", "gamma-star", "--n", "5"), "19"),
        (("compute", "cycles-avoid-123", "--n", "4"), "4"),
        (("compute", "cycles-avoid-321", "--n", "4"), "4"),
        (("compute", "lyndon-count", "--n", "3", "--evaluation", "1,2"), "1"),
        (("compute", "type-descent-count", "--type", "2,2", "--set", "1,3"), "1"),
        (("compute", "type-descent-count", "--type", "4", "--set", "2",
          "--contained"), "1"),
    ]:
        code, out, err = run_cli(capsys, *argv)
        assert code == 0, (argv, err)
        assert out.strip() == expected, argv


def test_compute_formats(capsys):
    code, out, _ = run_cli(capsys, "compute", "beta", "--n", "6", "--set", "1,2",
                           "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["value"] == 10 and doc["n"] == 6 and doc["set"] == "1,2"
    code, out, _ = run_cli(capsys, "compute", "gamma", "--n", "4",
                           "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["statistic,n,value", "gamma,4,17"]


def test_compute_errors(capsys):
    code, _, err = run_cli(capsys, "compute", "beta", "--n", "6", "--set", "4,2")
    assert code == 2 and "ascending" in err
    code, _, err = run_cli(capsys, "compute", "beta", "--n", "6", "--set", "6")
    assert code == 2
    code, _, err = run_cli(capsys, "compute", "eulerian", "--n", "4")
    assert code == 2 and "requires" in err
    code, _, err = run_cli(capsys, "compute", "type-descent-count",
                           "--type", "2,2", "--n", "5")
    assert code == 2
    with pytest.raises(SystemExit) as exc:
        main(["compute", "nonsense", "--n", "4"])
    assert exc.value.code == 2


def test_verify_commands(capsys):
    code, out, _ = run_cli(capsys, "verify", "all", "--max-n", "1")
    assert code == 0
    assert "checks passed" in out
    code, out, _ = run_cli(capsys, "verify", "inversions", "--max-n", "8")
    assert code == 0
    assert all(line.startswith("PASS") for line in out.splitlines()[:-1])
    code, out, _ = run_cli(capsys, "verify", "inversions", "--max-n", "6",
                           "--format", "json")
    doc = json.loads(out)
    assert doc["passed"] is True and len(doc["checks"]) == 6
    with pytest.raises(SystemExit) as exc:
        main(["verify", "everything", "--max-n", "3"])
    assert exc.value.code == 2


def test_scan_output_and_determinism(capsys):
    runs = []
    for jobs in ("1", "2", "4"):
        code, out, _ = run_cli(capsys, "scan", "--family", "all-proper",
                               "--n", "10", "--jobs", jobs, "--format", "json")
        assert code == 0
        runs.append(out)
    assert runs[0] == runs[1] == runs[2]
    doc = json.loads(runs[0])
    schema = json.loads(SCHEMA_PATH.read_text())
    jsonschema.validate(doc, schema)
    report = doc["reports"][0]
    assert report["member_count"] == 510
    assert "elapsed_ms" not in report


def test_scan_range_and_formats(capsys):
    code, out, _ = run_cli(capsys, "scan", "--family", "periodic:2:2",
                           "--n-range", "8:12:2")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 3
    assert lines[0].startswith("n=8 family=periodic:2:2 max_deviation=1/1385")
    code, out, _ = run_cli(capsys, "scan", "--family", "alt-threshold:0.25",
                           "--n", "12", "--format", "csv")
    rows = out.splitlines()
    assert rows[0] == "n,family,max_deviation_num,max_deviation_den,argmax_set,member_count"
    assert rows[1] == "12,alt-threshold:1/4,1,1,,2048"
    code, out, _ = run_cli(capsys, "scan", "--family", "all-proper", "--n", "8",
                           "--format", "json", "--timing")
    doc = json.loads(out)
    assert "elapsed_ms" in doc["reports"][0]
    jsonschema.validate(doc, json.loads(SCHEMA_PATH.read_text()))


def test_scan_errors(capsys):
    code, _, err = run_cli(capsys, "scan", "--family", "bogus", "--n", "5")
    assert code == 2 and "bad family" in err
    code, _, err = run_cli(capsys, "scan", "--family", "all-proper")
    assert code == 2
    code, _, err = run_cli(capsys, "scan", "--family", "all-proper",
                           "--n", "5", "--n-range", "3:5")
    assert code == 2
    code, _, err = run_cli(capsys, "scan", "--family", "all-proper",
                           "--n-range", "9:3")
    assert code == 2


def test_sequence_outputs(capsys):
    code, out, _ = run_cli(capsys, "sequence", "gamma", "--max-n", "6")
    assert code == 0
    lines = out.splitlines()
    assert lines[-1] == "6,349" and lines[0] == "1,1"
    code, out, _ = run_cli(capsys, "sequence", "euler", "--max-n", "1")
    assert out.splitlines() == ["1,1"]
    code, out, _ = run_cli(capsys, "sequence", "alt-cycles", "--max-n", "4")
    assert out.splitlines()[-1] == "4,1"
    code, out, _ = run_cli(capsys, "sequence", "eulerian-cyc-row", "--max-n", "4",
                           "--format", "csv")
    lines = out.splitlines()
    assert lines[0] == "n,k,value"
    assert lines[-4:] == ["4,1,0", "4,2,3", "4,3,3", "4,4,0"]
    code, out, _ = run_cli(capsys, "sequence", "gamma-star", "--max-n", "5",
                           "--format", "json")
    doc = json.loads(out)
    assert doc["rows"][-1] == [5, 19]
    with pytest.raises(SystemExit):
        main(["sequence", "unknown", "--max-n", "3"])


def test_byte_identical_repeat_runs(capsys):
    first = run_cli(capsys, "scan", "--family", "all-proper", "--n", "9",
                    "--format", "csv")
    second = run_cli(capsys, "scan", "--family", "all-proper", "--n", "9",
                     "--format", "csv")
    assert first == second
    a = run_cli(capsys, "sequence", "cycles-avoid-123", "--max-n", "10")
    b = run_cli(capsys, "sequence", "cycles-avoid-123", "--max-n", "10")
    assert a == b


def test_golden_roundtrip(tmp_path, capsys):
    target = tmp_path / "golden"
    code, out, _ = run_cli(capsys, "golden", "--dir", str(target), "--bless",
                           "--max-n", "4")
    assert code == 0
    code, out, _ = run_cli(capsys, "golden", "--dir", str(target), "--max-n", "4")
    assert code == 0 and "8 golden files match" in out
    (target / "beta_n3.csv").write_text("mask,set,count\n0,,999\n")
    code, out, _ = run_cli(capsys, "golden", "--dir", str(target), "--max-n", "4")
    assert code == 1 and "mismatch" in out
    code, out, _ = run_cli(capsys, "golden", "--dir", str(tmp_path / "void"),
                           "--max-n", "2")
    assert code == 1 and "missing" in out


def test_checked_in_golden_files_match(capsys):
    code, out, _ = run_cli(capsys, "golden", "--dir", str(GOLDEN_DIR),
                           "--max-n", "6")
    assert code == 0, out


def test_cache_size_flag(capsys):
    code, out, _ = run_cli(capsys, "--cache-size", "1024", "compute", "beta",
                           "--n", "8", "--set", "2,4,6")
    assert code == 0 and out.strip() == "1385"
    code, _, err = run_cli(capsys, "--cache-size", "0", "compute", "beta",
                           "--n", "8", "--set", "")
    assert code == 2
