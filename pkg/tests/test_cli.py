import json
import subprocess
import sys

import numpy as np
import pytest

from nlrabi import __version__, cli


def run(argv):
    """cli.main, with argparse's SystemExit folded into the return code."""
    try:
        return cli.main(argv)
    except SystemExit as exc:
        return int(exc.code or 0)


class TestExitCodes:
    def test_usage_errors_exit_one(self):
        assert run(["spectrum", "--bogus"]) == 1
        assert run(["definitely-not-a-command"]) == 1
        assert run(["reproduce", "fig99"]) == 1

    def test_domain_errors_exit_one(self, tmp_path):
        # k beyond the trustworthy half of the spectrum
        code = run(["spectrum", "--model", "kerr", "--cutoff", "16", "--k", "10",
                    "--outdir", str(tmp_path)])
        assert code == 1

    def test_convergence_failure_exits_two(self, tmp_path, capsys):
        code = run(["spectrum", "--model", "corrected-dipole", "--variant", "minus",
                    "--eta", "3", "--J", "0.1", "--cutoff", "16",
                    "--outdir", str(tmp_path)])
        assert code == 2
        assert "not converged" in capsys.readouterr().err
        # outputs are still written so the failure can be inspected
        doc = json.loads((tmp_path / "spectrum.json").read_text())
        assert doc["converged"] is False

    def test_missing_config_exits_one(self, tmp_path):
        assert run(["spectrum", "--config", str(tmp_path / "absent.cfg")]) == 1


class TestSpectrum:
    def test_kerr_csv_golden(self, tmp_path):
        assert run(["spectrum", "--model", "kerr", "--J", "0.1", "--k", "4",
                    "--outdir", str(tmp_path)]) == 0
        lines = (tmp_path / "spectrum.csv").read_text().splitlines()
        assert lines[0] == "level,value"
        values = [float(line.split(",")[1]) for line in lines[1:]]
        assert values == pytest.approx([0.0, 1.0, 2.2, 3.6], abs=1e-12)
        doc = json.loads((tmp_path / "spectrum.json").read_text())
        assert doc["schema_version"] == "1"
        assert doc["tool_version"] == __version__
        assert doc["config"]["model"] == "kerr"
        assert doc["levels"] == pytest.approx(values, abs=0.0)

    def test_json_format_is_single_file(self, tmp_path):
        out = tmp_path / "s.json"
        assert run(["spectrum", "--model", "minus", "--J", "0.05", "--k", "3",
                    "--format", "json", "--out", str(out)]) == 0
        doc = json.loads(out.read_text())
        assert doc["converged"] is True and len(doc["levels"]) == 3


class TestSweep:
    def test_csv_and_sidecar(self, tmp_path):
        assert run(["sweep", "--model", "corrected-dipole", "--variant", "minus",
                    "--control", "eta", "--start", "0", "--stop", "1", "--points", "3",
                    "--k", "4", "--J", "0.1", "--outdir", str(tmp_path)]) == 0
        lines = (tmp_path / "sweep.csv").read_text().splitlines()
        assert lines[0] == "eta,level_0,level_1,level_2,level_3,converged"
        assert len(lines) == 4 and lines[1].endswith("true")
        doc = json.loads((tmp_path / "sweep.json").read_text())
        assert doc["all_converged"] is True
        assert len(doc["cutoffs"]) == 3

    def test_unconverged_rows_exit_two(self, tmp_path, capsys):
        code = run(["sweep", "--model", "minus", "--control", "J", "--start", "0.05",
                    "--stop", "0.1", "--points", "2", "--k", "3", "--cutoff", "8",
                    "--outdir", str(tmp_path)])
        assert code == 2
        assert "not converged" in capsys.readouterr().err


class TestWignerAndSqueezing:
    def test_wigner_csv_shape(self, tmp_path):
        assert run(["wigner", "--model", "minus", "--J", "0.1", "--state", "0",
                    "--resolution", "9", "--outdir", str(tmp_path)]) == 0
        lines = (tmp_path / "wigner.csv").read_text().splitlines()
        assert len(lines) == 10
        assert len(lines[0].split(",")) == 10
        meta = json.loads((tmp_path / "wigner.json").read_text())["grid"]
        assert meta["resolution"] == 9

    def test_squeezing_golden(self, tmp_path):
        assert run(["squeezing", "--model", "minus", "--J", "0.1", "--state", "0",
                    "--outdir", str(tmp_path)]) == 0
        rep = json.loads((tmp_path / "squeezing.json").read_text())["report"]
        assert rep["s_sq"] == pytest.approx(0.86652399714035, abs=1e-10)
        assert rep["reference_level"] == 0


class TestPolariton:
    def test_solution_document(self, tmp_path):
        assert run(["polariton", "--omega-photon", "1", "--omega-matter", "2",
                    "--lam", "0.1", "--J-b", "0.3", "--outdir", str(tmp_path)]) == 0
        sol = json.loads((tmp_path / "polariton.json").read_text())["solution"]
        assert sol["omega_n"] == pytest.approx([0.98703667506127, 2.02626715960260])
        assert sol["J_eff"] == pytest.approx(8.3339260524964e-05, rel=1e-10)
        a1 = complex(*sol["A_n"][0])
        assert a1 == pytest.approx(0.99589990233233 + 0j, abs=1e-12)


class TestValidateCommand:
    def test_report_and_exit_code(self, validate_run, tmp_path):
        code, doc = validate_run
        assert code == 0 and doc["passed"] is True

    def test_single_check_selection(self, tmp_path, capsys):
        code = run(["validate", "--check", "kerr-analytic-spectrum",
                    "--outdir", str(tmp_path)])
        assert code == 0
        out = capsys.readouterr().out
        assert "PASS  kerr-analytic-spectrum" in out
        doc = json.loads((tmp_path / "validate.json").read_text())
        assert len(doc["checks"]) == 1

    def test_unknown_check_exits_one(self, tmp_path):
        assert run(["validate", "--check", "nope", "--outdir", str(tmp_path)]) == 1


class TestConfigFiles:
    BASE = ["spectrum", "--model", "corrected-dipole", "--variant", "minus",
            "--eta", "1.5", "--J", "0.05", "--k", "5"]

    def test_json_sidecar_round_trip_is_bitwise(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert run(self.BASE + ["--out", str(a)]) == 0
        assert run(["spectrum", "--config", str(tmp_path / "a.json"),
                    "--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()
        da = json.loads((tmp_path / "a.json").read_text())
        db = json.loads((tmp_path / "b.json").read_text())
        assert da["levels"] == db["levels"]
        assert da["config"] == db["config"]

    def test_key_value_file(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("# comment line\nmodel=minus\nJ=0.1\nk=4\n")
        out = tmp_path / "kv.csv"
        assert run(["spectrum", "--config", str(cfg), "--out", str(out)]) == 0
        doc = json.loads((tmp_path / "kv.json").read_text())
        assert doc["config"]["model"] == "minus"
        assert doc["config"]["J"] == 0.1
        assert doc["config"]["k"] == 4

    def test_explicit_flags_beat_config(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("model=minus\nJ=0.1\nk=4\n")
        out = tmp_path / "o.csv"
        assert run(["spectrum", "--config", str(cfg), "--k", "2",
                    "--out", str(out)]) == 0
        assert json.loads((tmp_path / "o.json").read_text())["config"]["k"] == 2

    def test_malformed_line_rejected(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("model minus\n")
        assert run(["spectrum", "--config", str(cfg)]) == 1


class TestOutputRouting:
    def test_env_var_outdir(self, tmp_path, monkeypatch):
        monkeypatch.setenv("NLRABI_OUTDIR", str(tmp_path / "routed"))
        assert run(["spectrum", "--model", "kerr", "--J", "0.1", "--k", "3"]) == 0
        assert (tmp_path / "routed" / "spectrum.csv").exists()

    def test_flag_beats_env_var(self, tmp_path, monkeypatch):
        monkeypatch.setenv("NLRABI_OUTDIR", str(tmp_path / "ignored"))
        assert run(["spectrum", "--model", "kerr", "--J", "0.1", "--k", "3",
                    "--outdir", str(tmp_path / "flagged")]) == 0
        assert (tmp_path / "flagged" / "spectrum.csv").exists()
        assert not (tmp_path / "ignored").exists()

    def test_reruns_are_byte_identical(self, tmp_path):
        for sub in ("one", "two"):
            assert run(["wigner", "--model", "minus", "--J", "0.1", "--resolution", "9",
                        "--outdir", str(tmp_path / sub)]) == 0
        for name in ("wigner.csv", "wigner.json"):
            assert (tmp_path / "one" / name).read_bytes() == \
                   (tmp_path / "two" / name).read_bytes()


class TestReproduce:
    def test_fig1_outputs(self, tmp_path):
        assert run(["reproduce", "fig1", "--points", "3",
                    "--outdir", str(tmp_path)]) == 0
        manifest = json.loads((tmp_path / "fig1_manifest.json").read_text())
        assert manifest["kind"] == "levels" and manifest["control"] == "J"
        assert [p["panel"] for p in manifest["panels"]] == ["a", "b"]
        for panel in manifest["panels"]:
            for curve in panel["curves"]:
                assert (tmp_path / curve["file"]).exists()
        freq = manifest["renormalized_frequency"]
        assert freq["J"] == pytest.approx([0.0, 0.05, 0.1])
        assert freq["minus"] == pytest.approx(
            [1.0, 0.92129205583922, 0.86731675081786], abs=1e-10
        )

    def test_spectra_figure_outputs(self, tmp_path):
        assert run(["reproduce", "fig3", "--points", "3", "--eta-max", "1",
                    "--k", "4", "--J", "0.1", "--outdir", str(tmp_path)]) == 0
        manifest = json.loads((tmp_path / "fig3_manifest.json").read_text())
        (panel,) = manifest["panels"]
        labels = [c["label"] for c in panel["curves"]]
        assert labels == ["naive-minus", "naive-kerr", "corrected-minus"]
        # the naive and corrected minus curves must visibly disagree at eta=1
        def last_row(name):
            lines = (tmp_path / name).read_text().splitlines()
            return np.array([float(v) for v in lines[-1].split(",")[1:-1]])

        gap = np.abs(
            last_row("fig3_naive_minus_J0.1.csv")
            - last_row("fig3_corrected_minus_J0.1.csv")
        ).max()
        assert gap > 1e-3

    def test_figure_aliases(self, tmp_path):
        assert run(["reproduce", "spectra-gauge-consistent", "--points", "2",
                    "--eta-max", "0.5", "--k", "4", "--J", "0.05",
                    "--outdir", str(tmp_path)]) == 0
        manifest = json.loads((tmp_path / "fig4_manifest.json").read_text())
        assert manifest["figure"] == "spectra-gauge-consistent"
        labels = [c["label"] for c in manifest["panels"][0]["curves"]]
        assert labels == ["corrected-plus", "corrected-minus", "corrected-kerr"]

    def test_wigner_panel_outputs(self, tmp_path):
        assert run(["reproduce", "fig2", "--resolution", "11",
                    "--outdir", str(tmp_path)]) == 0
        manifest = json.loads((tmp_path / "wigner_panel_manifest.json").read_text())
        assert len(manifest["panels"]) == 12
        assert manifest["columns"] == ["kerr", "minus", "plus"]
        for panel in manifest["panels"]:
            assert (tmp_path / panel["file"]).exists()
            if panel["hamiltonian"] == "kerr":
                assert panel["s_sq"] == 1.0
            if panel["hamiltonian"] == "minus":
                assert panel["s_sq"] < 1.0


class TestConsoleScript:
    def test_version_subprocess(self):
        proc = subprocess.run(
            [sys.executable, "-m", "nlrabi.cli", "--version"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0
        assert __version__ in proc.stdout

    def test_entry_point_runs(self, tmp_path):
        proc = subprocess.run(
            ["nlrabi", "spectrum", "--model", "kerr", "--J", "0.1", "--k", "3",
             "--outdir", str(tmp_path)],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0
        assert (tmp_path / "spectrum.csv").exists()
