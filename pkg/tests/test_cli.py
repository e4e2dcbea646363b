import subprocess
import sys

import numpy as np
import pytest

from entwit.cli import fmt12, main

WER = "werner d=2 alpha=-0.2071067811865476"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def table(out):
    rows = {}
    for line in out.splitlines():
        parts = line.split()
        if len(parts) >= 2 and parts[0].startswith(("W_", "N_", "C_", "LU_")):
            rows[parts[0]] = parts[1:]
    return rows


class TestEval:
    def test_worked_pair(self, capsys):
        code, out, _ = run(capsys, "eval", "--rho", WER, "--sigma", "named sigma_phi01")
        assert code == 0
        rows = table(out)
        assert float(rows["W_2q"][0]) == pytest.approx((3 * np.sqrt(2) - 4) / 16, abs=1e-11)
        assert rows["W_2q"][1] == "silent"

    def test_self_pair_silent(self, capsys):
        code, out, _ = run(capsys, "eval", "--rho", "isotropic d=3 beta=0.8", "--sigma", "isotropic d=3 beta=0.8")
        assert code == 0
        assert "fired" not in out

    def test_equal_negativity_werner(self, capsys):
        l0 = float((3 + np.sqrt(5)) / 6)
        code, out, _ = run(capsys, "eval", "--rho", f"pure d=2 l0={l0!r} l1={1 - l0!r}",
                           "--sigma", "werner d=3 alpha=-1")
        rows = table(out)
        assert float(rows["W_iso_prime"][0]) == pytest.approx(2 / 9 - 1 / 3, abs=1e-11)
        assert rows["W_iso_prime"][1] == "fired"
        assert abs(float(rows["W_N"][0])) < 1e-11
        assert rows["W_N"][1] == "silent"

    def test_ppt_source_undefined(self, capsys):
        code, out, _ = run(capsys, "eval", "--rho", "werner d=2 alpha=0.5", "--sigma", "werner d=2 alpha=-1")
        assert code == 0
        assert table(out)["W_wer_prime"][0] == "undefined"
        assert "note:" in out

    def test_csv_row_and_lu(self, capsys, tmp_path):
        p = tmp_path / "row.csv"
        code, out, _ = run(capsys, "eval", "--rho", "pure d=2 l0=0.8", "--sigma", "werner d=2 alpha=-0.5",
                           "--lu", "W_gamma", "--seed", "3", "--out", str(p))
        assert code == 0
        head, row = p.read_text().splitlines()
        assert head.split(",")[-1] == "LU_W_gamma"
        assert len(head.split(",")) == len(row.split(","))
        assert "LU_W_gamma" in table(out)

    def test_tol_override(self, capsys):
        # with a huge threshold nothing can fire
        code, out, _ = run(capsys, "eval", "--rho", "werner d=3 alpha=0.5", "--sigma", "werner d=3 alpha=-1",
                           "--tol", "10")
        assert "fired" not in out

    def test_parse_error(self, capsys):
        code, _, err = run(capsys, "eval", "--rho", "werner d=3 alpha=-2", "--sigma", "werner d=3 alpha=-1")
        assert code == 2
        assert "alpha=-2" in err and "11" in err


class TestScan:
    def test_bytes_identical(self, capsys, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        for p in (a, b):
            code, _, _ = run(capsys, "scan", "--rho", "rhoq", "--sigma", "pure d=2",
                             "--grid", "x=q:0:1:7,y=l0:0.5:1:5", "--out", str(p))
            assert code == 0
        assert a.read_bytes() == b.read_bytes()
        assert len(a.read_text().splitlines()) == 36

    def test_stdout(self, capsys):
        code, out, _ = run(capsys, "scan", "--rho", "rhoq", "--sigma", "pure d=2", "--grid", "x=q:0:1:2,y=l0:0.5:1:2")
        assert code == 0 and out.startswith("x,y,W_N,")

    def test_bad_grid(self, capsys):
        code, _, err = run(capsys, "scan", "--rho", "rhoq", "--sigma", "pure d=2", "--grid", "x=q:1:0:2,y=l0:0.5:1:2")
        assert code == 2 and "lo must be" in err


class TestVerify:
    def test_clean_suite(self, capsys):
        code, out, _ = run(capsys, "verify", "monotonicity", "--trials", "50", "--seed", "7")
        assert code == 0
        assert out.strip() == "suite=monotonicity trials=50 violations=0 max_residual=" + \
            out.split("max_residual=")[1].split()[0] + " seed=7 rng=PCG64"

    def test_violations_exit_1(self, capsys):
        code, out, _ = run(capsys, "verify", "opineq", "--trials", "20", "--seed", "7")
        assert code == 1 and "violations=0" not in out

    def test_unknown_suite(self, capsys):
        code, _, err = run(capsys, "verify", "bogus")
        assert code == 2 and "unknown suite" in err

    def test_env_seed(self, capsys, monkeypatch):
        monkeypatch.setenv("ENTWIT_SEED", "123")
        _, out, _ = run(capsys, "verify", "blindness", "--trials", "5")
        assert "seed=123" in out
        monkeypatch.setenv("ENTWIT_SEED", "abc")
        code, _, err = run(capsys, "verify", "blindness", "--trials", "5")
        assert code == 2
        # explicit flag wins
        _, out, _ = run(capsys, "verify", "blindness", "--trials", "5", "--seed", "4")
        assert "seed=4" in out

    def test_bad_seed_and_trials(self, capsys):
        assert run(capsys, "verify", "blindness", "--seed", "-1")[0] == 2
        assert run(capsys, "verify", "blindness", "--trials", "0")[0] == 2

    def test_usage_error_from_argparse(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["eval"])
        assert exc.value.code == 2


def test_fmt12():
    assert fmt12(None) == "undefined"
    assert fmt12(0.1) == "0.1"
    assert fmt12(1 / 3) == "0.333333333333"
    assert fmt12(-2.5e-17) == "-2.5e-17"
    assert float(fmt12(np.pi)) == pytest.approx(np.pi, rel=1e-11)


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "entwit", "verify", "abstract_claim", "--trials", "3"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert r.stdout.startswith("suite=abstract_claim trials=3 violations=0")
