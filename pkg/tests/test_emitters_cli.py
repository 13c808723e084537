import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from intgeo import cli, emitters, euclid, hermitian
from intgeo.graded import TensorTable
from intgeo.scalars import LambdaScalar, Scalar

GOLDEN = Path(__file__).parent / "golden"


def test_scalar_string_and_json():
    s = Scalar.pi_power(-1, 2)
    assert emitters.scalar_to_string(s) == "2*pi^-1"
    assert emitters.scalar_to_json(s) == {
        "terms": [{"pi_pow": -1, "num": "2", "den": "1"}]}
    multi = Scalar({0: Fraction(1, 2), 2: Fraction(-3)})
    assert emitters.scalar_from_json(emitters.scalar_to_json(multi)) == multi
    lam = LambdaScalar({0: Scalar.one(), 2: Scalar.pi_power(1)})
    assert emitters.scalar_from_json(emitters.scalar_to_json(lam)) == lam


def test_latex_rendering():
    assert emitters.scalar_to_latex(Scalar.pi_power(2, Fraction(1, 8))) \
        == "\\tfrac{1}{8}\\,\\pi^{2}"
    assert emitters.scalar_to_latex(Scalar.from_rational(3)) == "3"


def test_table_document_round_trip():
    table = euclid.kinematic_so(2, basis="mu")
    doc = emitters.table_document(table)
    assert doc["normalization"] == "standard"
    assert doc["basis"] == "mu"
    for t in doc["terms"]:
        emitters.scalar_from_json(t["coefficient"])


def test_emitters_deterministic():
    table = euclid.kinematic_so(3, basis="mu")
    for fmt in ("json", "csv", "latex"):
        assert emitters.emit_table(table, fmt) == emitters.emit_table(table, fmt)


def test_empty_table_valid():
    empty = TensorTable("SO", 2, "standard", "t", basis_labels={0: ["t_0"]})
    doc = emitters.table_document(empty)
    assert doc["terms"] == []
    json.loads(emitters.emit_json(doc).decode())


def test_golden_so3_byte_equality():
    table = euclid.kinematic_so(3, basis="mu")
    assert emitters.emit_table(table, "json") == (GOLDEN / "so3_chi_mu.json").read_bytes()


def test_golden_tasaki_n2_byte_equality():
    mats = hermitian.tasaki_matrices(2)
    doc = {
        "group": "U", "dimension": 2, "normalization": "standard",
        "basis": "tasaki x fourier-tasaki",
        "matrices": {str(k): [[emitters.scalar_to_json(c) for c in row] for row in m]
                     for k, m in sorted(mats.items())},
    }
    assert emitters.emit_json(doc) == (GOLDEN / "tasaki_n2.json").read_bytes()


def test_cli_unit_table_all_ones(capsys):
    rc = cli.main(["so", "kinematic", "--dim", "3", "--basis", "t",
                   "--normalization", "unit", "--format", "csv"])
    assert rc == 0
    out = capsys.readouterr().out
    rows = [line.split(",") for line in out.strip().splitlines()[1:]]
    assert all(r[-1] == "1" for r in rows)


def test_cli_unknown_flag_exits_2():
    with pytest.raises(SystemExit) as exc:
        cli.main(["so", "kinematic", "--dim", "3", "--no-such-flag"])
    assert exc.value.code == 2


def test_cli_usage_error_exits_2():
    with pytest.raises(SystemExit) as exc:
        cli.main(["un", "firstorder", "--dim", "2"])
    assert exc.value.code == 2


def test_cli_verify_small(tmp_path, capsys):
    out = tmp_path / "report.txt"
    rc = cli.main(["verify", "--all", "--max-dim", "2", "--out", str(out)])
    assert rc == 0
    text = out.read_text()
    assert "ALL CHECKS PASSED" in text
    assert "FAIL" not in text


def test_cli_mc_csv(tmp_path):
    out = tmp_path / "results.csv"
    rc = cli.main(["mc", "kinematic", "--dim", "2", "--samples", "20000",
                   "--seed", "7", "--out", str(out)])
    assert rc == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "test,seed,samples,estimate,stderr,prediction,z"
    assert len(lines) == 2


def test_cli_mc_bodies_file(tmp_path):
    spec = {"A": {"kind": "ball", "center": ["0", "0"], "radius": "1"},
            "B": {"kind": "box", "min": ["-1/2", "-1/2"], "max": ["1/2", "1/2"]}}
    bodies = tmp_path / "bodies.json"
    bodies.write_text(json.dumps(spec))
    out = tmp_path / "results.csv"
    rc = cli.main(["mc", "kinematic", "--bodies", str(bodies),
                   "--samples", "20000", "--seed", "7", "--out", str(out)])
    assert rc == 0
    row = out.read_text().splitlines()[1].split(",")
    assert float(row[5]) == pytest.approx(3.141592653589793 + 5)


def test_cli_config_and_outdir(tmp_path, monkeypatch):
    cfg = tmp_path / "intgeo.cfg"
    cfg.write_text("samples=15000\nseed=3\n")
    monkeypatch.setenv("INTGEO_OUT_DIR", str(tmp_path))
    rc = cli.main(["--config", str(cfg), "mc", "kinematic", "--dim", "2",
                   "--out", "rel.csv"])
    assert rc == 0
    lines = (tmp_path / "rel.csv").read_text().splitlines()
    assert lines[1].split(",")[2] == "15000"


def test_cli_spaceform_checks(capsys):
    assert cli.main(["spaceform", "complex", "--dim", "2", "--check", "bfs"]) == 0
    assert cli.main(["spaceform", "complex", "--dim", "2", "--check",
                     "chapoton"]) == 0
    assert cli.main(["spaceform", "real", "--dim", "2", "--lambda-eval", "1"]) == 0
    capsys.readouterr()


def test_cli_un_verify(capsys):
    assert cli.main(["un", "verify", "--dim", "2"]) == 0
    out = capsys.readouterr().out
    assert "ALL CHECKS PASSED" in out
    assert "mu_1,0 / f_1" in out


def test_console_script_installed():
    proc = subprocess.run([sys.executable, "-m", "intgeo.cli", "so",
                           "kinematic", "--dim", "2", "--format", "json"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    json.loads(proc.stdout)


def test_document_json_round_trip_lossless():
    table = hermitian.convert_un_table(hermitian.kinematic_un(2), 2, "tasaki")
    doc = emitters.table_document(table)
    assert json.loads(emitters.emit_json(doc).decode()) == doc
