import csv
import json
import subprocess
import sys

import pytest

from hopf_tensegrity.cli import main, parse_scalar


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_exact(capsys):
    code, out, _ = run(["analyze", "--x", "1/2"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert (doc["tau"], doc["r1"], doc["r2"]) == ("1/2", "1/6", "1/6")
    assert doc["equilibrium_residual"] == "0"
    assert all(abs(doc["linking"][i][j]) == 1 for i in range(4) for j in range(4) if i != j)
    assert len(doc["nodes"]) == 12 and len(doc["edge_lengths"]["strut"]) == 12


def test_analyze_numeric(capsys):
    code, out, _ = run(["analyze", "--x", "0.3"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["exact"] is False
    assert doc["equilibrium_residual"] < 1e-9
    assert doc["classification"] == "interior-crossing"


@pytest.mark.parametrize("argv", [["analyze", "--x", "2"], ["analyze", "--x", "0"], ["analyze"], ["analyze", "--x", "abc"], ["nope"]])
def test_usage_errors(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2 and "error" in err


def test_mixing_rational_and_decimal_is_usage_error(capsys, tmp_path):
    code, _, err = run(["sweep", "--from", "1/4", "--to", "0.75", "--out", str(tmp_path)], capsys)
    assert code == 2 and "mixed" in err


def test_parse_scalar_kinds():
    assert parse_scalar("3/7")[1] == "rational"
    assert parse_scalar("0.25") == (0.25, "decimal")
    assert parse_scalar("1")[1] == "integer"


def test_sweep(tmp_path, capsys):
    out = tmp_path / "frames"
    code, _, _ = run(["sweep", "--from", "0", "--to", "1", "--steps", "11", "--out", str(out)], capsys)
    assert code == 0
    frames = sorted(p.name for p in out.glob("frame_*.obj"))
    assert len(frames) == 11
    rows = list(csv.DictReader(open(out / "summary.csv")))
    assert len(rows) == 11
    mid = rows[5]
    assert mid["x"] == "1/2" and mid["cable_c1_length"] == mid["cable_c2_length"]
    assert all(r["linking"] == "hopf" for r in rows[1:-1])
    obj = (out / "frame_005.obj").read_text().splitlines()
    assert "# strut" in obj and any(l.startswith("# cable") for l in obj)


def test_sweep_numeric_cables_equal_at_half(tmp_path, capsys):
    out = tmp_path / "f"
    run(["sweep", "--from", "0.0", "--to", "1.0", "--steps", "3", "--format", "json", "--out", str(out)], capsys)
    doc = json.loads((out / "frame_001.json").read_text())
    assert doc["x"] == 0.5
    rows = list(csv.DictReader(open(out / "summary.csv")))
    assert abs(float(rows[1]["cable_c1_length"]) - float(rows[1]["cable_c2_length"])) < 1e-12


def test_outputs_are_byte_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    for d in (a, b):
        run(["sweep", "--from", "0.1", "--to", "0.9", "--steps", "5", "--out", str(d)], capsys)
        run(["trajectory", "--steps", "50", "--out", str(d / "t.csv")], capsys)
        run(["analyze", "--x", "0.37", "--out", str(d / "a.json")], capsys)
    for p in sorted(a.iterdir()):
        assert p.read_bytes() == (b / p.name).read_bytes(), p.name


def test_persistence(capsys):
    code, out, _ = run(["persistence"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["verdict"] is True
    d_tau = next(f for f in doc["functions"] if f["name"] == "D_tau")
    assert d_tau["roots_in_01"][0]["branch"] == "other"


def test_torsion(capsys):
    code, out, _ = run(["torsion"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["structure"] == [2, 6] and len(doc["points"]) + 1 == 12


def test_trajectory_500(tmp_path, capsys):
    path = tmp_path / "traj.csv"
    code, _, _ = run(["trajectory", "--steps", "500", "--out", str(path)], capsys)
    rows = list(csv.DictReader(open(path)))
    assert code == 0 and len(rows) == 500
    assert max(float(r["K_residual"]) for r in rows) < 1e-9


def test_trajectory_tolerance_override(tmp_path, capsys):
    code, _, _ = run(["trajectory", "--steps", "20", "--tol", "1e-30", "--out", str(tmp_path / "t.csv")], capsys)
    assert code == 1


def test_verify(tmp_path, capsys):
    path = tmp_path / "report.json"
    code, _, _ = run(["verify", "--out", str(path)], capsys)
    doc = json.loads(path.read_text())
    assert code == 0 and doc["verdict"] is True
    assert doc["det_identity"] == "pass" and doc["torsion_structure"] == [2, 6]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hopf_tensegrity", "analyze", "--x", "5"], capture_output=True, text=True)
    assert proc.returncode == 2


def test_verify_reports_failures(monkeypatch, capsys):
    from hopf_tensegrity import verify
    from hopf_tensegrity.errors import VerificationError

    def broken():
        raise VerificationError("det_identity", "det Omega != 8 d", "x*y")

    monkeypatch.setattr(verify.spectral, "derive_spectral_cubic", broken)
    code, out, _ = run(["verify"], capsys)
    doc = json.loads(out)
    assert code == 1 and doc["verdict"] is False and doc["det_identity"] == "fail"
    assert doc["failures"] == [{"check": "det_identity", "message": "det Omega != 8 d", "residual": "x*y"}]
