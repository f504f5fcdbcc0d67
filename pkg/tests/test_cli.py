"""The command-line interface: exit codes, determinism, file outputs."""

import json

import numpy as np
import pytest

from fda2s.cli import main
from fda2s.io import (
    read_functional_sample,
    read_record,
    read_spectrum,
    write_functional_sample,
    write_record,
)
from fda2s import FunctionalSample, Interval, TimeSeriesRecord, uniform_grid

from conftest import smooth_curves


def run(*argv):
    return main([str(a) for a in argv])


@pytest.fixture
def record_file(tmp_path):
    path = tmp_path / "rec.csv"
    code = run("simulate", "--hs", 2, "--tp", 4.0, "--duration", 900,
               "--fs", 1.28, "--seed", 7, "-o", path)
    assert code == 0
    return path


class TestSimulate:
    def test_record_length(self, tmp_path):
        out = tmp_path / "rec.csv"
        assert run("simulate", "--hs", 2, "--tp", 4.0, "--duration", 1800,
                   "--fs", 1.28, "--seed", 1, "-o", out) == 0
        rec = read_record(out)
        assert rec.values.size == 2304

    def test_negative_hs_exits_2(self, tmp_path):
        code = run("simulate", "--hs", -1, "--tp", 4.0, "--seed", 1,
                   "-o", tmp_path / "r.csv")
        assert code == 2

    def test_byte_identical_reruns(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        args = ("simulate", "--hs", 2, "--tp", 4.0, "--duration", 300,
                "--fs", 1.28, "--seed", 5)
        assert run(*args, "-o", a) == 0
        assert run(*args, "-o", b) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_missing_seed_prints_one(self, tmp_path, capsys):
        assert run("simulate", "--hs", 1, "--tp", 5.0, "--duration", 300,
                   "-o", tmp_path / "r.csv") == 0
        assert "seed" in capsys.readouterr().err


class TestSpectrum:
    def test_default_parzen_is_60(self, record_file, tmp_path):
        out = tmp_path / "spec.csv"
        assert run("spectrum", "--input", record_file, "-o", out) == 0
        rec = read_record(record_file)
        explicit = tmp_path / "spec60.csv"
        assert run("spectrum", "--input", record_file, "--parzen", 60,
                   "-o", explicit) == 0
        assert out.read_bytes() == explicit.read_bytes()

    def test_integral_matches_variance(self, record_file, tmp_path):
        out = tmp_path / "spec.csv"
        assert run("spectrum", "--input", record_file, "-o", out) == 0
        rec = read_record(record_file)
        s = read_spectrum(out)
        biased = float(np.mean((rec.values - rec.values.mean()) ** 2))
        assert abs(s.sigma2 - biased) / biased < 0.02

    def test_short_record_exits_2(self, tmp_path):
        path = tmp_path / "short.csv"
        write_record(TimeSeriesRecord(1.0, np.arange(30.0)), path)
        assert run("spectrum", "--input", path, "-o", tmp_path / "s.csv") == 2


class TestSegment:
    def test_sidecar_matches_rows(self, record_file, tmp_path):
        out = tmp_path / "waves.csv"
        assert run("segment", "--input", record_file, "-o", out) == 0
        sample = read_functional_sample(out)
        sidecar = json.loads((tmp_path / "waves.csv.json").read_text())
        assert sidecar["n_waves"] == sample.n_curves
        assert len(sidecar["periods"]) == sample.n_curves
        assert sidecar["record_std"] > 0
        assert sidecar["hs_interval"] == pytest.approx(4 * sidecar["record_std"])

    def test_flat_record_exits_3(self, tmp_path):
        path = tmp_path / "flat.csv"
        write_record(TimeSeriesRecord(1.0, np.zeros(100)), path)
        assert run("segment", "--input", path, "-o", tmp_path / "w.csv") == 3

    def test_defaults_are_order6_knots61(self, record_file, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert run("segment", "--input", record_file, "-o", a) == 0
        assert run("segment", "--input", record_file, "--order", 6,
                   "--knots", 61, "--grid", 101, "-o", b) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_constrain_upcross(self, record_file, tmp_path):
        out = tmp_path / "waves.csv"
        assert run("segment", "--input", record_file, "--constrain-upcross",
                   "-o", out) == 0
        sample = read_functional_sample(out)
        mid = sample.values[:, sample.values.shape[1] // 2]
        assert np.max(np.abs(mid)) < 0.2 * np.max(np.abs(sample.values))


class TestTest:
    def _write_pair(self, tmp_path, rng, delta=0.0):
        grid = uniform_grid(Interval(0.0, 1.0), 101)
        x = FunctionalSample(grid, smooth_curves(rng, 30, grid))
        y_rows = smooth_curves(rng, 25, grid) + delta * np.sin(2 * np.pi * grid.points)
        y = FunctionalSample(grid, y_rows)
        xp, yp = tmp_path / "x.csv", tmp_path / "y.csv"
        write_functional_sample(x, xp)
        write_functional_sample(y, yp)
        return xp, yp

    def test_identical_samples_resampled_p_is_one(self, tmp_path, rng):
        xp, _ = self._write_pair(tmp_path, rng)
        out = tmp_path / "report.json"
        assert run("test", "--x", xp, "--y", xp, "--basis", "trig:k=3,parts=both",
                   "--calibration", "permutation:B=99", "--seed", 3, "-o", out) == 0
        report = json.loads(out.read_text())
        assert report["qn"] == pytest.approx(0.0, abs=1e-20)
        assert report["p_resampled"] == 1.0
        assert report["p_resampled"] >= 1.0 / (99 + 1)

    def test_odd_basis_reports_k1(self, tmp_path, rng):
        xp, yp = self._write_pair(tmp_path, rng)
        out = tmp_path / "report.json"
        assert run("test", "--x", xp, "--y", yp, "--basis", "trig:k=3,parts=odd",
                   "-o", out) == 0
        report = json.loads(out.read_text())
        assert report["k"] == 1
        assert report["params"]["parts"] == "odd"

    def test_malformed_csv_exits_2_with_line(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("0.0,1.0\nx,2.0\n")
        out = tmp_path / "r.json"
        assert run("test", "--x", bad, "--y", bad, "-o", out) == 2
        assert "line 2" in capsys.readouterr().err

    def test_report_round_trips_bytes(self, tmp_path, rng):
        xp, yp = self._write_pair(tmp_path, rng, delta=0.5)
        out = tmp_path / "report.json"
        assert run("test", "--x", xp, "--y", yp, "--basis", "indicator:k=4",
                   "-o", out) == 0
        from fda2s.io import canonical_json

        text = out.read_text()
        assert canonical_json(json.loads(text)) == text

    def test_config_file_defaults(self, tmp_path, rng):
        xp, yp = self._write_pair(tmp_path, rng)
        config = tmp_path / "config.json"
        config.write_text(json.dumps({"basis": "indicator:k=4"}))
        out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
        assert run("test", "--x", xp, "--y", yp, "--config", config, "-o", out1) == 0
        assert run("test", "--x", xp, "--y", yp, "--basis", "indicator:k=4",
                   "-o", out2) == 0
        assert json.loads(out1.read_text())["qn"] == json.loads(out2.read_text())["qn"]


class TestQuantiles:
    def test_from_null_values_file(self, tmp_path, rng):
        path = tmp_path / "null.txt"
        values = rng.chisquare(2, 1000)
        path.write_text("\n".join(repr(float(v)) for v in values) + "\n")
        out = tmp_path / "table.csv"
        assert run("quantiles", "--null-values", path, "--k", 2, "-o", out) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "quantile,0.5,0.9,0.95,0.975,0.99"
        assert [ln.split(",")[0] for ln in lines[1:]] == ["Asymptotic", "MC", "Rel. error"]

    def test_generate_from_samples(self, tmp_path, rng):
        grid = uniform_grid(Interval(0.0, 1.0), 41)
        x = FunctionalSample(grid, smooth_curves(rng, 60, grid))
        y = FunctionalSample(grid, smooth_curves(rng, 60, grid))
        xp, yp = tmp_path / "x.csv", tmp_path / "y.csv"
        write_functional_sample(x, xp)
        write_functional_sample(y, yp)
        out = tmp_path / "table.csv"
        assert run("quantiles", "--generate", "--x", xp, "--y", yp,
                   "--basis", "trig:k=3,parts=both",
                   "--calibration", "permutation:B=400", "--seed", 2,
                   "-o", out) == 0
        assert out.exists()

    def test_requires_inputs(self, tmp_path):
        assert run("quantiles", "-o", tmp_path / "t.csv") == 2

    def test_chi2_input_near_zero_relative_error(self, tmp_path):
        from scipy.stats import chi2 as chi2_dist

        u = (np.arange(20_000) + 0.5) / 20_000
        pseudo = chi2_dist.ppf(u, 2)
        path = tmp_path / "null.txt"
        path.write_text("\n".join(repr(float(v)) for v in pseudo) + "\n")
        out = tmp_path / "table.csv"
        assert run("quantiles", "--null-values", path, "--k", 2, "-o", out) == 0
        rel = [float(v) for v in out.read_text().splitlines()[3].split(",")[1:]]
        assert max(abs(r) for r in rel) < 0.02
