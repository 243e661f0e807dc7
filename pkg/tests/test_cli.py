import json
import subprocess
import sys
from pathlib import Path

import pytest

from simplexcoh.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_catalog(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0
    assert out.startswith("A1\n0101\n1010\n0001\n0010\n")
    assert out.count("\n\n") == 7


def test_verify_fse_ok_and_fail(capsys, tmp_path):
    code, _, _ = run(capsys, "verify-fse", "a2")
    assert code == 0
    shear = tmp_path / "shear.txt"
    shear.write_text("1100\n0100\n0010\n0001\n")
    code, out, _ = run(capsys, "verify-fse", str(shear))
    assert code == 1
    assert "0000100000" in out  # state 32: slot 5 set


def test_malformed_matrix_file(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("0101\n1010\n0001\n")
    code, _, err = run(capsys, "verify-fse", str(bad))
    assert code == 2
    assert "error" in err


def test_unknown_selector(capsys):
    code, _, err = run(capsys, "cohomology", "A9")
    assert code == 2


def test_cohomology_golden_all(capsys):
    code, out, _ = run(capsys, "cohomology", "--all")
    assert code == 0
    assert out == (GOLDEN / "cohomology_all.tsv").read_text()


def test_cohomology_golden_constrained(capsys):
    code, out, _ = run(capsys, "cohomology", "A1", "--constrained")
    assert code == 0
    assert out == (GOLDEN / "cohomology_A1_constrained.tsv").read_text()


def test_structured_output(capsys, tmp_path):
    dest = tmp_path / "out.json"
    code, out, _ = run(capsys, "cohomology", "A3T", "--format", "structured", "--output", str(dest))
    assert code == 0 and out == ""
    doc = json.loads(dest.read_text())
    assert set(doc) == {"command", "inputs", "results", "timings"}
    assert doc["command"] == "cohomology"
    assert json.dumps(doc["results"]).count("40") >= 1


def test_cocycle_and_quantum_verify(capsys, tmp_path):
    code, out, _ = run(capsys, "cocycle", "A1", "0", "--constrained")
    assert code == 0
    path = tmp_path / "c.txt"
    path.write_text(out)
    code, out, _ = run(capsys, "quantum-verify", "A1", "--cocycle-file", str(path))
    assert code == 0 and out.strip() == "holds"
    code, _, _ = run(capsys, "quantum-verify", "A1", "--basis-index", "3")
    assert code == 0


def test_corrupted_cocycle_file(capsys, tmp_path):
    code, out, _ = run(capsys, "cocycle", "A1", "0")
    path = tmp_path / "c.txt"
    path.write_text("\n".join(out.splitlines()[:4]) + "\n")
    code, _, err = run(capsys, "quantum-verify", "A1", "--cocycle-file", str(path))
    assert code == 2
    assert "missing" in err


def test_quantum_verify_non_cocycle(capsys, tmp_path):
    lines = [f"{lab}: " + " ".join(["0"] * 16) for lab in "RSTUV"]
    lines[1] = "S: " + " ".join(["0"] * 8 + ["1"] + ["0"] * 7)
    path = tmp_path / "c.txt"
    path.write_text("\n".join(lines) + "\n")
    code, out, _ = run(capsys, "quantum-verify", "A1", "--cocycle-file", str(path))
    assert code == 1
    assert out.startswith("fails")


def test_basis_index_out_of_range(capsys):
    code, _, _ = run(capsys, "cocycle", "A1", "99")
    assert code == 2


def test_tetra_family_symbolic(capsys):
    code, out, _ = run(capsys, "tetra", "--family")
    assert code == 0
    assert out.splitlines()[0] == "identity: yes, dependencies: none"


def test_tetra_family_analyze(capsys):
    code, out, _ = run(capsys, "tetra", "--family", "1,2,3,1,1,1", "--analyze", "--vacuum-starts", "50")
    assert code == 0
    assert "lambda: 2 + 1*sqrt(5)" in out
    assert "free_energy: 1.44363547518" in out
    assert "irreducible_123: yes yes yes" in out


def test_tetra_bad_family(capsys):
    code, _, _ = run(capsys, "tetra", "--family", "1,2,3")
    assert code == 2
    code, _, _ = run(capsys, "tetra", "--family", "1,2,x,1,1,1")
    assert code == 2


def test_tetra_from_cocycle(capsys):
    code, out, _ = run(capsys, "tetra", "--from-cocycle", "A1", "2", "--format", "structured")
    assert code == 0
    doc = json.loads(out)
    assert doc["results"]["tetrahedron_holds"] and doc["results"]["conjugated_identity_holds"]


def test_bad_base_rejected(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["tetra", "--from-cocycle", "A1", "0", "--base", "1"])
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "simplexcoh", "verify-fse", "A4T"], capture_output=True, text=True)
    assert proc.returncode == 0
