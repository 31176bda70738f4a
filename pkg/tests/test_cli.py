from pathlib import Path

import pytest
import yaml

from pyrefront.cli import main
from pyrefront.outputs import load_manifest

QUICK = ["--set", "grid.cells=[96]", "--set", "run.t_end=2.0",
         "--set", "output.interval=1.0"]


def write(path: Path, text: str) -> str:
    path.write_text(text, encoding="utf-8")
    return str(path)


class TestRunCommand:
    def test_empty_config_runs_default_scenario(self, tmp_path):
        cfg = write(tmp_path / "empty.yaml", "")
        out = tmp_path / "out"
        code = main(["run", "--config", cfg, "--out", str(out), "--quiet", *QUICK])
        assert code == 0
        manifest = load_manifest(out / "manifest.yaml")
        assert manifest["status"] == "completed"
        assert manifest["config"]["scenario"] == "validation"
        assert (out / "T_0000.csv").exists()
        assert (out / "fig_temperature.png").exists()
        assert (out / "front_trace_+x.csv").exists()

    def test_override_recorded_in_manifest(self, tmp_path):
        cfg = write(tmp_path / "c.yaml", "params:\n  h: 0.9\n")
        out = tmp_path / "out"
        code = main(["run", "--config", cfg, "--out", str(out), "--quiet",
                     "--set", "params.h=0.2", *QUICK])
        assert code == 0
        manifest = load_manifest(out / "manifest.yaml")
        assert manifest["config"]["params"]["h"] == 0.2

    def test_missing_config_file_is_config_error(self, tmp_path):
        code = main(["run", "--config", str(tmp_path / "nope.yaml"),
                     "--out", str(tmp_path / "o"), "--quiet"])
        assert code == 1

    def test_unknown_key_is_config_error(self, tmp_path, capsys):
        cfg = write(tmp_path / "bad.yaml", "params:\n  hh: 1.0\n")
        code = main(["run", "--config", cfg, "--out", str(tmp_path / "o"),
                     "--quiet"])
        assert code == 1
        assert "hh" in capsys.readouterr().err

    def test_divergence_exit_code_and_manifest(self, tmp_path):
        cfg = write(tmp_path / "div.yaml", yaml.safe_dump({
            "grid": {"cells": [16], "length": [16.0]},
            "params": {"k": 0.5, "h": 1.0e6, "T_bar": 1.0e7},
            "initial": {"kind": "hot_strip", "interval": [4.0, 8.0],
                        "peak": 900.0},
            "scheme": {"cfl": 1.0},
            "run": {"t_end": 200.0}}))
        out = tmp_path / "o"
        code = main(["run", "--config", cfg, "--out", str(out), "--quiet"])
        assert code == 2
        assert load_manifest(out / "manifest.yaml")["status"] == "diverged"

    def test_rerun_manifest_reproduces_rasters(self, tmp_path):
        cfg = write(tmp_path / "empty.yaml", "")
        out1, out2 = tmp_path / "a", tmp_path / "b"
        assert main(["run", "--config", cfg, "--out", str(out1), "--quiet",
                     *QUICK]) == 0
        assert main(["run", "--config", str(out1 / "manifest.yaml"),
                     "--out", str(out2), "--quiet"]) == 0
        for name in sorted(p.name for p in out1.glob("*.csv")):
            assert (out1 / name).read_bytes() == (out2 / name).read_bytes()


class TestValidateConfig:
    def test_valid_config_exits_zero(self, tmp_path, capsys):
        cfg = write(tmp_path / "ok.yaml", "scenario: validation\n")
        assert main(["validate-config", "--config", cfg]) == 0
        assert "ok" in capsys.readouterr().out

    def test_semantic_error_exits_one(self, tmp_path, capsys):
        cfg = write(tmp_path / "bad.yaml",
                    "initial:\n  peak: 100.0\n")  # below ambient
        assert main(["validate-config", "--config", cfg]) == 1
        assert "T_inf" in capsys.readouterr().err

    def test_agrees_with_run_acceptance(self, tmp_path):
        # validate-config accepts exactly what run would accept
        good = write(tmp_path / "good.yaml", "scenario: moisture-1d\n")
        bad = write(tmp_path / "bad.yaml",
                    "scenario: moisture-1d\nmoisture:\n  T_w: 100.0\n")
        assert main(["validate-config", "--config", good]) == 0
        assert main(["validate-config", "--config", bad]) == 1
        out = tmp_path / "out"
        code = main(["run", "--config", bad, "--out", str(out), "--quiet"])
        assert code == 1


class TestReducedCommand:
    def test_empty_config_uses_reduced_preset(self, tmp_path):
        cfg = write(tmp_path / "empty.yaml", "")
        out = tmp_path / "out"
        code = main(["reduced", "--config", cfg, "--out", str(out), "--quiet",
                     "--set", "run.t_end=1.0"])
        assert code == 0
        manifest = load_manifest(out / "manifest.yaml")
        assert manifest["config"]["scenario"] == "reduced-weber"
        assert all("bound" in entry for entry in manifest["series"])

    def test_non_reduced_config_rejected(self, tmp_path):
        cfg = write(tmp_path / "v.yaml", "scenario: validation\n")
        code = main(["reduced", "--config", cfg, "--out", str(tmp_path / "o"),
                     "--quiet", "--set", "run.t_end=1.0"])
        assert code == 1


class TestWavespeedCommand:
    def test_report_and_scan_written(self, tmp_path):
        cfg = write(tmp_path / "empty.yaml", "")
        out = tmp_path / "out"
        code = main(["wavespeed", "--config", cfg, "--out", str(out), "--quiet",
                     "--set", "tw.bracket=[5.0,6.5]", "--set", "tw.n_scan=8"])
        assert code == 0
        report = yaml.safe_load((out / "wavespeed_report.yaml").read_text())
        assert report["roots"] == pytest.approx([5.7303], abs=0.01)
        scan_lines = (out / "wavespeed_scan.csv").read_text().splitlines()
        assert scan_lines[0] == "speed,mismatch"
        assert len(scan_lines) == 9
        assert (out / "fig_wavespeed.png").exists()


class TestSweepCommand:
    def test_cartesian_runs_and_summary(self, tmp_path):
        cfg = write(tmp_path / "empty.yaml", "")
        out = tmp_path / "out"
        code = main(["sweep", "--config", cfg, "--out", str(out), "--quiet",
                     *QUICK, "--sweep", "params.h=0.05,0.1"])
        assert code == 0
        assert (out / "run000" / "manifest.yaml").exists()
        assert (out / "run001" / "manifest.yaml").exists()
        summary = (out / "sweep_summary.csv").read_text().splitlines()
        assert len(summary) == 3  # header + 2 runs
        assert summary[0].startswith("run,params.h")


class TestBenchCommand:
    def test_structural_report(self, tmp_path):
        out = tmp_path / "out"
        code = main(["bench", "--sizes", "24,32", "--reps", "3", "--steps", "3",
                     "--out", str(out), "--quiet"])
        assert code == 0
        lines = (out / "bench.csv").read_text().splitlines()
        assert len(lines) == 1 + 4  # two sizes x two schemes
        assert "cell_updates_per_s" in lines[0]
        assert (out / "bench.txt").exists()
        assert (out / "fig_bench.png").exists()
