"""CLI surface: file formats, determinism, reference columns, exit codes."""

import csv
import json
import subprocess
import sys

import numpy as np
import pytest

from betahermite.cli import main


def run(args):
    return main(args)


class TestSample:
    def test_shape_and_sorting(self, tmp_path):
        out = tmp_path / "s.csv"
        assert run(["sample", "--n", "4", "--beta", "2", "--kind", "gaussian",
                    "--reps", "2", "--seed", "7", "--output", str(out)]) == 0
        rows = list(csv.DictReader(out.open()))
        assert len(rows) == 8
        for rep in ("0", "1"):
            ev = [float(r["eigenvalue"]) for r in rows if r["replicate"] == rep]
            assert ev == sorted(ev)
        sidecar = json.loads(out.with_suffix(".csv.json").read_text())
        assert sidecar["config"]["seed"] == 7

    def test_byte_identical_rerun(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        args = ["sample", "--n", "6", "--beta", "1", "--reps", "3", "--seed", "9"]
        run([*args, "--output", str(a)])
        run([*args, "--output", str(b)])
        assert a.read_bytes() == b.read_bytes()

    def test_threads_do_not_change_values(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        run(["sample", "--n", "8", "--beta", "2", "--reps", "4", "--seed", "3",
             "--output", str(a)])
        run(["--threads", "4", "sample", "--n", "8", "--beta", "2", "--reps", "4",
             "--seed", "3", "--output", str(b)])
        assert a.read_bytes() == b.read_bytes()

    def test_fixed_trace_constraint(self, tmp_path):
        out = tmp_path / "f.csv"
        run(["sample", "--n", "10", "--beta", "2", "--kind", "fixed-trace",
             "--reps", "3", "--seed", "1", "--output", str(out)])
        rows = list(csv.DictReader(out.open()))
        for rep in ("0", "1", "2"):
            ssq = sum(float(r["eigenvalue"]) ** 2 for r in rows if r["replicate"] == rep)
            assert abs(ssq - 45.0) <= 1e-9 * 45.0


class TestDensity:
    def test_bulk_with_semicircle_reference(self, tmp_path):
        out = tmp_path / "d.csv"
        assert run(["density", "--n", "50", "--beta", "2", "--kind", "fixed-trace",
                    "--reps", "40", "--seed", "5", "--regime", "bulk",
                    "--reference", "semicircle", "--output", str(out)]) == 0
        rows = list(csv.DictReader(out.open()))
        assert "semicircle" in rows[0]
        mid = rows[len(rows) // 2]
        assert abs(float(mid["semicircle"]) - 2.0 / np.pi) < 0.05

    def test_edge_with_aibeta_reference(self, tmp_path):
        out = tmp_path / "e.csv"
        assert run(["density", "--n", "80", "--beta", "2", "--reps", "40",
                    "--seed", "5", "--regime", "edge",
                    "--grid-lo", "-4", "--grid-hi", "1.5", "--bins", "22",
                    "--reference", "aibeta", "--output", str(out)]) == 0
        rows = list(csv.DictReader(out.open()))
        assert "aibeta" in rows[0]
        sidecar = json.loads(out.with_suffix(".csv.json").read_text())
        assert sidecar["regime"] == "edge"
        assert sidecar["normalization"] == "per-replicate"
        assert sidecar["params"] == {"n": 80, "beta": 2.0, "kind": "gaussian"}
        assert sidecar["n_samples"] == 40
        assert sidecar["config"]["seed"] == 5

    def test_density_from_spectra_file(self, tmp_path):
        spectra = tmp_path / "s.csv"
        run(["sample", "--n", "30", "--beta", "2", "--kind", "fixed-trace",
             "--reps", "20", "--seed", "13", "--output", str(spectra)])
        via_file = tmp_path / "via_file.csv"
        inline = tmp_path / "inline.csv"
        common = ["density", "--n", "30", "--beta", "2", "--kind", "fixed-trace",
                  "--regime", "bulk"]
        assert run([*common, "--input", str(spectra), "--output", str(via_file)]) == 0
        assert run([*common, "--reps", "20", "--seed", "13", "--output", str(inline)]) == 0
        rows_a = list(csv.DictReader(via_file.open()))
        rows_b = list(csv.DictReader(inline.open()))
        assert [r["height"] for r in rows_a] == [r["height"] for r in rows_b]

    def test_empty_grid_is_usage_error(self, tmp_path, capsys):
        rc = run(["density", "--n", "20", "--beta", "2", "--reps", "5", "--seed", "1",
                  "--regime", "bulk", "--grid-lo", "50", "--grid-hi", "60",
                  "--output", str(tmp_path / "x.csv")])
        assert rc == 2
        assert "--grid-lo" in capsys.readouterr().err

    def test_aibeta_rejects_general_beta(self, tmp_path, capsys):
        rc = run(["density", "--n", "20", "--beta", "3", "--reps", "5", "--seed", "1",
                  "--regime", "edge", "--reference", "aibeta",
                  "--output", str(tmp_path / "x.csv")])
        assert rc == 2
        assert "kontsevich" in capsys.readouterr().err


class TestSpecial:
    def test_ai_value(self, capsys):
        assert run(["special", "--fn", "ai", "--x", "0"]) == 0
        out = capsys.readouterr().out.splitlines()
        assert float(out[1].split(",")[1]) == pytest.approx(0.3550280538878173, abs=1e-14)

    def test_aibeta_value(self, capsys):
        assert run(["special", "--fn", "aibeta", "--beta", "2", "--x", "0"]) == 0
        out = capsys.readouterr().out.splitlines()
        assert float(out[1].split(",")[1]) == pytest.approx(0.0669874837796640, abs=1e-7)

    def test_kontsevich_value(self, capsys):
        assert run(["special", "--fn", "kontsevich", "--kn", "2", "--beta", "2",
                    "--x", "0"]) == 0
        out = capsys.readouterr().out.splitlines()
        x, v, e = out[1].split(",")
        assert float(v) == pytest.approx(0.1339749675593280, abs=1e-10)
        assert float(e) <= 1e-10

    def test_table_to_file(self, tmp_path):
        out = tmp_path / "ai.csv"
        run(["special", "--fn", "ai-tail", "--x-lo", "-2", "--x-hi", "2",
             "--x-step", "1", "--output", str(out)])
        rows = out.read_text().splitlines()
        assert rows[0] == "x,value,error_estimate"
        assert len(rows) == 6


class TestVerify:
    def test_stieltjes_passes(self, tmp_path, capsys):
        rep = tmp_path / "r.json"
        rc = run(["verify", "--check", "stieltjes", "--n", "30", "--seed", "1",
                  "--output", str(rep)])
        assert rc == 0
        data = json.loads(rep.read_text())
        assert data["all_passed"]
        names = {c["check_name"] for c in data["checks"]}
        assert "stieltjes" in names

    def test_integral_eq_beta4(self, tmp_path):
        rep = tmp_path / "r.json"
        rc = run(["verify", "--check", "integral-eq", "--n", "2", "--beta", "4",
                  "--output", str(rep)])
        assert rc == 0
        data = json.loads(rep.read_text())
        assert data["checks"][0]["metric"] <= 1e-6

    def test_deterministic_report(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        run(["verify", "--check", "stieltjes", "--seed", "4", "--output", str(a)])
        run(["verify", "--check", "stieltjes", "--seed", "4", "--output", str(b)])
        assert a.read_bytes() == b.read_bytes()

    def test_unknown_check_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            run(["verify", "--check", "nonsense"])
        assert exc.value.code == 2

    def test_failing_check_gives_exit_1(self, monkeypatch, tmp_path):
        from betahermite import cli
        from betahermite.checks import CheckResult

        def fake(names, master_seed=1, n=None, beta=None):
            return [CheckResult("fake", {}, 1.0, 0.5, False, "injected failure")]

        monkeypatch.setattr(cli, "run_checks", fake)
        rc = run(["verify", "--check", "stieltjes", "--output", str(tmp_path / "r.json")])
        assert rc == 1


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["sample", "--n", "not-an-int", "--beta", "2"])
    assert exc.value.code == 2


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "betahermite.cli", "special", "--fn", "ai", "--x", "1.0"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "value" in proc.stdout
