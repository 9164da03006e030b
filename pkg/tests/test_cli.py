"""Command-line interface: formats, determinism, exit codes, atomic output."""

import csv
import io
import json

import pytest

from extremal import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_cgc_su2_pretty_row_count(capsys):
    code, out, _ = run(capsys, "cgc-su2", "--j1", "1/2", "--j2", "1/2")
    assert code == 0
    lines = out.rstrip("\n").split("\n")
    # header + 6 nonzero coefficients (3 triplet + 1 stretched pair doubled + 2 singlet)
    assert len(lines) == 1 + 6
    assert lines[0].startswith("j1")


def test_cgc_su2_known_value(capsys):
    code, out, _ = run(
        capsys, "cgc-su2", "--j1", "1/2", "--j2", "1/2", "--j3", "0", "--format", "json"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == 1
    assert doc["command"] == "cgc-su2"
    vals = {(r["m1"], r["m2"]): r["value"] for r in doc["records"]}
    assert vals[("1/2", "-1/2")] == "1/2*sqrt(2)"
    assert vals[("-1/2", "1/2")] == "-1/2*sqrt(2)"
    for r in doc["records"]:
        assert abs(float(r["value_float"])) == pytest.approx(0.5 ** 0.5)


def test_json_output_deterministic(capsys):
    a = run(capsys, "cgc-su2", "--j1", "1", "--j2", "1", "--format", "json")
    b = run(capsys, "cgc-su2", "--j1", "1", "--j2", "1", "--format", "json")
    assert a == b
    assert a[0] == 0


def test_csv_format(capsys):
    code, out, _ = run(
        capsys, "sixj", "--j1", "1", "--j2", "1", "--j3", "1",
        "--j4", "1", "--j5", "1", "--j6", "1", "--format", "csv"
    )
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["j1", "j2", "j3", "j4", "j5", "j6", "value", "value_float"]
    assert rows[1][6] == "1/6"


def test_out_file_atomic(tmp_path, capsys):
    target = tmp_path / "table.json"
    code, out, _ = run(
        capsys, "gt-basis", "--lam", "1", "--mu", "0",
        "--format", "json", "--out", str(target)
    )
    assert code == 0
    assert out == ""  # nothing on stdout when --out is given
    doc = json.loads(target.read_text())
    assert len(doc["records"]) == 3
    # no stray temp files left behind
    assert [p.name for p in tmp_path.iterdir()] == ["table.json"]


def test_gt_basis_fields(capsys):
    code, out, _ = run(capsys, "gt-basis", "--lam", "1", "--mu", "1", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["records"]) == 8
    rec = doc["records"][0]
    for field in ("lam", "mu", "j", "t", "tz", "y", "value", "value_float", "coords"):
        assert field in rec
    ys = {r["y"] for r in doc["records"]}
    assert ys == {"-1", "0", "1"}


def test_projector_dump(capsys):
    code, out, _ = run(
        capsys, "projector", "--algebra", "su2", "--trunc", "2", "--format", "json"
    )
    assert code == 0
    doc = json.loads(out)
    assert len(doc["records"]) == 3
    by_low = {r["lowering"]: r for r in doc["records"]}
    assert by_low[""]["coefficient"] == "1"
    assert by_low["e21"]["raising"] == "e12"
    # -1/(h1 + 2) commuted through e21 into the middle slot: -1/h1
    assert by_low["e21"]["coefficient"] == "(-1)/(h1)"


def test_projector_order_flag(capsys):
    code, out, _ = run(
        capsys, "projector", "--algebra", "su3", "--trunc", "1",
        "--order", "23,13,12", "--format", "json"
    )
    assert code == 0
    code, _, err = run(
        capsys, "projector", "--algebra", "su3", "--trunc", "1", "--order", "12,23,13"
    )
    assert code == 2
    assert "normal ordering" in err


def test_cgc_su3_target_filter(capsys):
    code, out, _ = run(
        capsys, "cgc-su3", "--lam1", "1", "--mu1", "0", "--lam2", "0", "--mu2", "1",
        "--lam3", "0", "--mu3", "0", "--format", "json"
    )
    assert code == 0
    doc = json.loads(out)
    assert len(doc["records"]) == 3
    assert {r["value"] for r in doc["records"]} <= {"1/3*sqrt(3)", "-1/3*sqrt(3)"}


def test_cli_error_exit_code(capsys):
    # --lam3 without --mu3
    code, _, err = run(
        capsys, "cgc-su3", "--lam1", "1", "--mu1", "0", "--lam2", "0", "--mu2", "1",
        "--lam3", "0"
    )
    assert code == 2
    assert "error:" in err
    # target not in the decomposition
    code, _, err = run(
        capsys, "cgc-su3", "--lam1", "1", "--mu1", "0", "--lam2", "0", "--mu2", "1",
        "--lam3", "2", "--mu3", "2"
    )
    assert code == 2


def test_bad_half_integer_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["cgc-su2", "--j1", "1/3", "--j2", "1/2"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_verify_suite_pass(capsys):
    code, out, _ = run(
        capsys, "verify", "--suite", "su2-projector", "--trunc", "3", "--format", "json"
    )
    assert code == 0
    doc = json.loads(out)
    assert all(r["ok"] for r in doc["records"])


def test_verify_failure_exit_code(monkeypatch, capsys):
    # the exit-code contract for a failing check, via an injected suite
    monkeypatch.setitem(cli.SUITES, "no-go", lambda trunc: [("forced", False)])
    code, out, _ = run(capsys, "verify", "--suite", "no-go", "--format", "json")
    assert code == 3
    doc = json.loads(out)
    assert doc["records"][0]["ok"] is False
