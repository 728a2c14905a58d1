import subprocess
import sys
from pathlib import Path

import pytest

from dualforget.cli import main

ROOT = Path(__file__).parent.parent


def run(capsys, *argv) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_forget_weak_maintain(capsys, theories_dir):
    code, out, err = run(capsys, "forget", "--mode", "weak", "--vars", "lt",
                         str(theories_dir / "maintain.th"))
    assert code == 0
    assert out.strip() == "lp"


def test_forget_strong_pressure(capsys, theories_dir):
    code, out, _ = run(capsys, "forget", "--mode", "strong", "--vars", "mt,ht",
                       str(theories_dir / "pressure_rules.th"))
    assert code == 0
    assert out.strip() == "T"


def test_forget_fixpoint_emit(capsys, theories_dir):
    code, out, _ = run(capsys, "forget", "--mode", "strong", "--vars", "r",
                       "--emit", "fixpoint", str(theories_dir / "network.th"))
    assert code == 0
    assert "lfp r(" in out


def test_emit_fo_on_fixpoint_outcome_fails(capsys, theories_dir):
    code, out, err = run(capsys, "forget", "--mode", "strong", "--vars", "r",
                         "--emit", "fo", str(theories_dir / "network.th"))
    assert code == 2
    assert out == ""
    assert "no fo equivalent" in err


def test_wsc_denial(capsys, theories_dir):
    code, out, _ = run(capsys, "wsc", "--query", "(fdd -> (~ld | pa)) -> pa",
                       "--keep", "ld,fdd")
    assert code == 0
    assert out.strip() == "fdd & ld"


def test_wsc_trivial(capsys):
    code, out, _ = run(capsys, "wsc", "--query", "T")
    assert code == 0
    assert out.strip() == "T"


def test_snc_matches_forget(capsys, theories_dir):
    code, out, _ = run(capsys, "snc", "--theory", str(theories_dir / "pressure_rules.th"),
                       "--query", "T", "--keep", "lp,mp")
    assert code == 0
    code2, out2, _ = run(capsys, "forget", "--mode", "strong", "--vars", "mt,ht",
                         str(theories_dir / "pressure_rules.th"))
    assert out.strip() == out2.strip()


def test_check_equiv(capsys, theories_dir):
    assert run(capsys, "check-equiv", "p | ~p", "T")[0] == 0
    code, out, _ = run(capsys, "check-equiv", "p", "q")
    assert code == 4
    assert "counterexample" in out


def test_check_equiv_fo(capsys):
    code, _, _ = run(capsys, "check-equiv", "all x. (a(x) -> a(x))", "T", "--domain-size", "2")
    assert code == 0


def test_parse_error_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.th"
    bad.write_text("p &&& q\n")
    code, _, err = run(capsys, "forget", "--mode", "strong", "--vars", "p", str(bad))
    assert code == 1
    assert "parse error" in err


def test_verify_flag(capsys, theories_dir):
    code, out, err = run(capsys, "forget", "--mode", "weak", "--vars", "lt",
                         "--verify", str(theories_dir / "maintain.th"))
    assert code == 0
    assert "verify: PASS" in err


def test_verify_fo(capsys, theories_dir):
    code, out, err = run(capsys, "forget", "--mode", "strong", "--vars", "t",
                         "--verify", "--domain-size", "2",
                         str(theories_dir / "symptoms.th"))
    assert code == 0
    assert "verify: PASS" in err


def test_trace_env_var(capsys, theories_dir, monkeypatch):
    monkeypatch.setenv("DF_TRACE", "1")
    code, out, err = run(capsys, "forget", "--mode", "weak", "--vars", "mt,ht",
                         str(theories_dir / "pressure_rules.th"))
    assert code == 0
    assert "ClauseRule" in err


def test_output_file(capsys, theories_dir, tmp_path):
    target = tmp_path / "result.txt"
    code, out, _ = run(capsys, "forget", "--mode", "weak", "--vars", "lt",
                       "--output", str(target), str(theories_dir / "maintain.th"))
    assert code == 0
    assert out == ""
    assert target.read_text().strip() == "lp"


@pytest.mark.parametrize(
    "theory,mode,vars",
    [
        ("maintain.th", "strong", "lt"),
        ("maintain.th", "weak", "lt"),
        ("pressure_rules.th", "strong", "mt,ht"),
        ("pressure_rules.th", "weak", "mt,ht"),
        ("outdoor_complex.th", "strong", "loan"),
        ("outdoor_complex.th", "weak", "loan"),
        ("consultant.th", "strong", "loan"),
        ("consultant.th", "weak", "loan"),
        ("symptoms.th", "strong", "t"),
        ("symptoms.th", "weak", "t"),
        ("network.th", "strong", "r"),
        ("network.th", "weak", "r"),
    ],
)
def test_verify_gate_on_shipped_theories(capsys, theories_dir, theory, mode, vars):
    # --verify failures are impossible for the shipped worked examples
    code, _, err = run(capsys, "forget", "--mode", mode, "--vars", vars,
                       "--verify", str(theories_dir / theory))
    assert code == 0
    assert "verify: PASS" in err


def test_check_equiv_accepts_theory_files(capsys, theories_dir):
    code, _, _ = run(capsys, "check-equiv", str(theories_dir / "maintain.th"),
                     "lt | lp")
    assert code == 0


def test_byte_identical_runs(theories_dir):
    cmd = [
        sys.executable, "-m", "dualforget.cli",
        "forget", "--mode", "weak", "--vars", "loan",
        str(theories_dir / "consultant.th"),
    ]
    env = {"PYTHONPATH": str(ROOT / "src"), "PATH": "/usr/bin:/bin"}
    a = subprocess.run(cmd, capture_output=True, env=env)
    b = subprocess.run(cmd, capture_output=True, env=env)
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout
