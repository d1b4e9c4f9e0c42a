import json

import pytest

from sukodaira import cli
from sukodaira.cli import FIELDS, main
from sukodaira.errors import InternalInconsistency


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_catalog_entry(capsys):
    code, out, _ = run(capsys, "check", "fls96_j1")
    assert code == 0
    assert "pseudoholomorphic: true" in out


def test_kodaira_j2(capsys):
    code, out, _ = run(capsys, "kodaira", "fls96_j2", "--k", "1", "--json")
    rec = json.loads(out)
    assert code == 0
    assert list(rec)[: len(FIELDS)] == list(FIELDS)
    assert (rec["verdict"], rec["l0"], rec["witness"]["function"]) == ("zero", 1, "exp(-i*x2)")


def test_deform_minus_infinity(capsys):
    code, out, _ = run(capsys, "deform", "solv8", "--theorem", "minus-infinity", "--k", "1", "--fiber-nonconstant", "--json")
    rec = json.loads(out)
    assert code == 0
    assert rec["verdict"] == "minus_infinity"
    assert rec["gamma_F"] == "-psi_4(f1)*c1"
    assert rec["coframe"][-1] == "w4 = p4 + f1*c1"


def test_deform_zero_text(capsys):
    code, out, _ = run(capsys, "deform", "fls96_j1", "--theorem", "zero")
    assert code == 0
    assert "verdict: zero" in out and "w2 = p2 + f2*c1" in out


def test_json_is_byte_deterministic(capsys):
    first = run(capsys, "kodaira", "solv8", "--json")[1]
    second = run(capsys, "kodaira", "solv8", "--json")[1]
    assert first == second


def test_file_input_and_expect_mismatch(tmp_path, capsys):
    path = tmp_path / "j2.acs"
    _, text, _ = run(capsys, "catalog", "fls96_j2")
    path.write_text(text.replace("expect pseudoholomorphic = false", "expect pseudoholomorphic = true"))
    code, out, _ = run(capsys, "check", str(path))
    assert code == 1
    assert "expected pseudoholomorphic = true" in out


def test_jacobi_failure_exit_code(tmp_path, capsys):
    path = tmp_path / "bad.acs"
    path.write_text("algebra bad m = 3\nd p2 = p1^p2\nd p3 = p2^p3\n")
    assert run(capsys, "check", str(path))[0] == 1
    code, _, err = run(capsys, "kodaira", str(path))
    assert code == 1 and "line 3" in err


def test_parse_error_exit_code(tmp_path, capsys):
    path = tmp_path / "bad.acs"
    path.write_text("algebra bad m = 2\nd p2 = 0.5*p1^p2\n")
    code, _, err = run(capsys, "kodaira", str(path))
    assert code == 1 and "decimal" in err


def test_hypothesis_violation_exit_code(capsys):
    code, _, err = run(capsys, "deform", "fls96_j2", "--theorem", "zero")
    assert code == 1 and "pseudoholomorphic" in err


def test_unknown_source(capsys):
    assert run(capsys, "check", "no_such_thing")[0] == 1
    assert run(capsys, "catalog", "no_such_thing")[0] == 1


def test_internal_inconsistency_exit_code(capsys, monkeypatch):
    def boom(*args, **kwargs):
        raise InternalInconsistency("forced")

    monkeypatch.setattr(cli, "kodaira_invariant", boom)
    assert run(capsys, "kodaira", "solv8")[0] == 2


def test_verify_all(capsys):
    code, out, _ = run(capsys, "verify-all")
    assert code == 0
    assert out.strip().endswith("8/8 entries reproduce")


def test_catalog_listing(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0 and len(out.strip().splitlines()) == 8
    rec = json.loads(run(capsys, "catalog", "fls96_j2", "--json")[1])
    assert rec["expected"]["gamma"] == "-1/2*c1"


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "sukodaira", "check", "torus_4"], capture_output=True, text=True)
    assert proc.returncode == 0 and "gamma: 0" in proc.stdout
