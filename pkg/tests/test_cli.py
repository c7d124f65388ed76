import json
import subprocess
import sys

import pytest

from twocenter.cli import main


def run_cli(*argv, capsys=None):
    """Invoke the CLI in-process, returning (exit_code, stdout)."""
    code = main(list(argv))
    out = capsys.readouterr().out if capsys else ""
    return code, out


class TestClassify:
    def test_json_payload(self, capsys):
        code, out = run_cli("classify", "--m-plus", "1", "--m-minus", "0.5",
                            "--delta", "1", "--f", "0.75", capsys=capsys)
        assert code == 0
        payload = json.loads(out)
        assert payload["region"] == "DL"
        assert payload["period_region"] == "PDown"

    def test_physical_input(self, capsys):
        code, out = run_cli("classify", "--m-plus", "0.75", "--m-minus",
                            "0.25", "--j0", "-0.25", "--f0-physical", "1.5",
                            "--v0", "1", capsys=capsys)
        assert code == 0
        assert json.loads(out)["region"] == "DL"

    def test_mixed_styles_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["classify", "--m-plus", "1", "--m-minus", "0.5",
                  "--delta", "1", "--f", "0.75", "--j0", "-0.25"])
        assert exc.value.code == 2

    def test_missing_args_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            main(["classify", "--m-plus", "1", "--m-minus", "0.5"])
        assert exc.value.code == 2


class TestPeriod:
    def test_value(self, capsys):
        code, out = run_cli("period", "--mass", "1", "--delta", "1",
                            "--f", "0.5", capsys=capsys)
        assert code == 0
        payload = json.loads(out)
        assert payload["status"] == "Ok"
        assert abs(payload["value"] - 3.9846657991670678) < 1e-9

    def test_out_of_domain_exit_code(self, capsys):
        code, out = run_cli("period", "--mass", "1", "--delta", "1",
                            "--f", "1.2", "--representation", "down",
                            capsys=capsys)
        assert code == 3

    def test_representation_selection(self, capsys):
        code, out = run_cli("period", "--mass", "1", "--delta", "1",
                            "--f", "0.5", "--representation", "star",
                            capsys=capsys)
        assert json.loads(out)["representation"] == "TStar"


class TestScan:
    def test_csv_format(self, capsys):
        code, out = run_cli("scan", "--m-plus", "1", "--m-minus", "0.5",
                            "--delta", "1", "--f-min", "-0.4", "--f-max",
                            "1.2", "--n", "9", capsys=capsys)
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "F0_hat,T_plus,T_minus,W,region,dW_sign"
        assert len(lines) == 10
        assert all(line.count(",") == 5 for line in lines)

    def test_reproducible_bytes(self, tmp_path):
        args = ["scan", "--m-plus", "1", "--m-minus", "0.5", "--delta", "1",
                "--f-min", "-0.4", "--f-max", "1.2", "--n", "25"]
        p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(args + ["--out", str(p1)]) == 0
        assert main(args + ["--out", str(p2)]) == 0
        assert p1.read_bytes() == p2.read_bytes()

    def test_linefeed_endings(self, tmp_path):
        out = tmp_path / "scan.csv"
        main(["scan", "--m-plus", "1", "--m-minus", "0.5", "--delta", "1",
              "--f-min", "0.0", "--f-max", "0.5", "--n", "5",
              "--out", str(out)])
        data = out.read_bytes()
        assert b"\r" not in data
        assert data.endswith(b"\n")


class TestVerify:
    def test_lemma_summary_line(self, capsys):
        code, out = run_cli("verify", "lemma", "--samples", "500",
                            "--seed", "7", capsys=capsys)
        assert code == 0
        assert "max_residual=" in out
        assert "status=PASS" in out

    def test_seeded_reproducibility(self, tmp_path):
        args = ["verify", "lemma", "--samples", "400", "--seed", "3"]
        p1, p2 = tmp_path / "v1.txt", tmp_path / "v2.txt"
        assert main(args + ["--out", str(p1)]) == 0
        assert main(args + ["--out", str(p2)]) == 0
        assert p1.read_bytes() == p2.read_bytes()

    def test_divergence(self, capsys):
        code, out = run_cli("verify", "divergence", capsys=capsys)
        assert code == 0
        assert "monotone=True" in out


class TestOracle:
    def test_summary_and_trajectory(self, tmp_path, capsys):
        traj = tmp_path / "traj.csv"
        code, out = run_cli("oracle", "--m-plus", "1.3", "--m-minus", "0.7",
                            "--delta", "1.2", "--f", "0.6",
                            "--oscillations", "4",
                            "--trajectory-out", str(traj), capsys=capsys)
        assert code == 0
        payload = json.loads(out)
        assert payload["rel_err_plus"] < 1e-5
        assert payload["rel_err_minus"] < 1e-5
        assert payload["J_drift"] < 1e-9
        header = traj.read_text().splitlines()[0]
        assert header == "t,tau,q1,q2,p1,p2,alpha,beta,J,F"


class TestEntryPoint:
    def test_module_invocation(self):
        out = subprocess.run(
            [sys.executable, "-m", "twocenter.cli", "classify", "--m-plus",
             "1", "--m-minus", "0.5", "--delta", "1", "--f", "0.75"],
            capture_output=True, text=True)
        assert out.returncode == 0
        assert json.loads(out.stdout)["region"] == "DL"

    def test_quadrature_overrides(self, capsys):
        code, out = run_cli("period", "--mass", "1", "--delta", "1",
                            "--f", "0.5", "--rel-tol", "1e-6",
                            "--max-levels", "6", capsys=capsys)
        assert code == 0
        payload = json.loads(out)
        assert abs(payload["value"] - 3.9846657991670678) < 1e-5

    def test_thread_cap_env(self):
        import os
        env = dict(os.environ, TWOCENTER_THREADS="4")
        out = subprocess.run(
            [sys.executable, "-m", "twocenter.cli", "verify", "monotonicity"],
            capture_output=True, text=True, env=env)
        assert out.returncode == 0
        assert "status=PASS" in out.stdout
