import numpy as np
import pytest
from typer.testing import CliRunner

from cli import app
from eigshift.storage import read_matrix_market, read_trace_csv
from eigshift.storage.traces import parse_sweep_csv

runner = CliRunner()

EXAMPLE_RATE_ARGS = ["predict-rate", "--lambda-l", "2", "--lambda-l1", "2.01", "--lambda-n", "4", "--theta", "0.5"]


class TestPredictRate:
    def test_reference_example(self):
        result = runner.invoke(app, EXAMPLE_RATE_ARGS)
        assert result.exit_code == 0, result.output
        assert "tau = 0.005" in result.output
        assert "rate = 0.990050" in result.output
        assert "Resolved configuration" in result.output

    def test_annihilated(self):
        result = runner.invoke(app, ["predict-rate", "--lambda-l", "0", "--lambda-l1", "1", "--lambda-n", "1"])
        assert result.exit_code == 0, result.output
        assert "rate = 0.000000" in result.output

    def test_with_spectrum(self):
        result = runner.invoke(app, EXAMPLE_RATE_ARGS + ["--spectrum", "1,2,2.01,4", "--l", "2"])
        assert result.exit_code == 0, result.output
        assert "Multiplier-quotient rate at this shift:" in result.output
        assert result.output.count("0.99005") >= 2

    def test_spectrum_needs_block_size(self):
        result = runner.invoke(app, EXAMPLE_RATE_ARGS + ["--spectrum", "1,2,2.01,4"])
        assert result.exit_code == 1

    def test_ordering_violation(self):
        result = runner.invoke(app, ["predict-rate", "--lambda-l", "3", "--lambda-l1", "2", "--lambda-n", "4"])
        assert result.exit_code == 1
        assert "Error:" in result.output

    @pytest.mark.parametrize("theta", ["1.5", "0", "-0.2"])
    def test_theta_out_of_range(self, theta):
        result = runner.invoke(app, ["predict-rate", "--lambda-l", "2", "--lambda-l1", "2.01", "--lambda-n", "4", "--theta", theta])
        assert result.exit_code == 1
        assert "(0, 1)" in result.output

    def test_missing_required_option(self):
        result = runner.invoke(app, ["predict-rate", "--lambda-l", "2"])
        assert result.exit_code == 1


class TestSolve:
    def test_scalar_matrix(self):
        result = runner.invoke(app, ["solve", "--diag", "5", "--l", "1", "--inner", "direct", "--shift", "fixed:0"])
        assert result.exit_code == 0, result.output
        assert "Outer iterations: 1" in result.output
        assert "fixed:0.0" in result.output

    def test_zero_shift_finds_lowest_eigenvalue(self, tmp_path):
        trace = tmp_path / "trace.csv"
        result = runner.invoke(
            app,
            ["solve", "--diag", "1,2,2.01,4", "--l", "1", "--inner", "direct", "--shift", "fixed:0", "--truth", "--trace", str(trace)],
        )
        assert result.exit_code == 0, result.output
        records = read_trace_csv(trace)
        assert records[-1].ritz_value == pytest.approx(1.0, abs=1e-10)
        assert records[-1].abs_err is not None

    def test_not_converged_exits_two(self):
        result = runner.invoke(
            app,
            ["solve", "--diag", "1,2,2.01,4", "--inner", "richardson", "--shift", "optimal:2.01,4", "--max-outer", "10"],
        )
        assert result.exit_code == 2
        assert "not converged" in result.output

    def test_theta_out_of_range(self):
        result = runner.invoke(app, ["solve", "--diag", "1,2,3", "--l", "1", "--theta", "1.5"])
        assert result.exit_code == 1
        assert "(0, 1)" in result.output

    def test_block_size_too_large(self):
        result = runner.invoke(app, ["solve", "--diag", "1,2", "--l", "2"])
        assert result.exit_code == 1

    def test_needs_exactly_one_matrix(self, tmp_path):
        assert runner.invoke(app, ["solve", "--l", "1"]).exit_code == 1
        assert runner.invoke(app, ["solve", "--diag", "1,2", "--laplacian", "4"]).exit_code == 1

    def test_bad_inner(self):
        result = runner.invoke(app, ["solve", "--diag", "1,2,3", "--inner", "gmres"])
        assert result.exit_code == 1

    def test_unknown_flag(self):
        result = runner.invoke(app, ["solve", "--diag", "1,2,3", "--frobnicate"])
        assert result.exit_code == 1

    def test_missing_matrix_file(self, tmp_path):
        result = runner.invoke(app, ["solve", "--matrix", str(tmp_path / "none.mtx"), "--l", "1"])
        assert result.exit_code == 3

    def test_plot_with_truth(self, tmp_path):
        plot = tmp_path / "errors.svg"
        result = runner.invoke(
            app,
            ["solve", "--laplacian", "8", "--l", "2", "--shift", "fixed:0", "--inner", "direct", "--truth", "--plot", str(plot)],
        )
        assert result.exit_code == 0, result.output
        svg = plot.read_text()
        assert "|lambda_1 error|" in svg
        assert "|lambda_2 error|" in svg


class TestReproducePaper:
    def test_writes_files(self, tmp_path):
        result = runner.invoke(app, ["reproduce-paper", "--out-dir", str(tmp_path)])
        assert result.exit_code == 0, result.output
        assert (tmp_path / "paper_trace.csv").exists()
        assert (tmp_path / "paper_fig1.svg").exists()
        assert "predicted 0.990050" in result.output
        assert "tau = 0.005" in result.output

    def test_unwritable_out_dir(self, tmp_path):
        blocker = tmp_path / "blocker"
        blocker.write_text("")
        result = runner.invoke(app, ["reproduce-paper", "--out-dir", str(blocker / "out")])
        assert result.exit_code == 3
        assert "Error:" in result.output


class TestSweep:
    def test_writes_rows(self, tmp_path):
        result = runner.invoke(app, ["sweep", "--gaps", "1,0.1,0.01", "--out-dir", str(tmp_path), "--workers", "2"])
        assert result.exit_code == 0, result.output
        rows = parse_sweep_csv((tmp_path / "sweep.csv").read_text())
        assert [r.gap for r in rows] == [0.01, 0.1, 1.0]
        assert (tmp_path / "sweep.svg").exists()

    @pytest.mark.parametrize("gaps", ["", "-0.1", "0.1,abc", "5"])
    def test_rejects_bad_gaps(self, gaps, tmp_path):
        result = runner.invoke(app, ["sweep", "--gaps", gaps, "--out-dir", str(tmp_path)])
        assert result.exit_code == 1
        assert not (tmp_path / "sweep.csv").exists()

    def test_rejects_bad_workers(self, tmp_path):
        result = runner.invoke(app, ["sweep", "--gaps", "0.1", "--workers", "0", "--out-dir", str(tmp_path)])
        assert result.exit_code == 1


class TestWriteMatrix:
    def test_laplacian(self, tmp_path):
        out = tmp_path / "lap.mtx"
        result = runner.invoke(app, ["write-matrix", "--laplacian", "4", "--out", str(out)])
        assert result.exit_code == 0, result.output
        A = read_matrix_market(out)
        np.testing.assert_array_equal(np.diag(A.entries), [2.0, 2.0, 2.0, 2.0])
        assert A.entries[0, 1] == -1.0

    def test_written_file_solves(self, tmp_path):
        out = tmp_path / "example.mtx"
        assert runner.invoke(app, ["write-matrix", "--diag", "1,2,2.01,4", "--out", str(out)]).exit_code == 0
        result = runner.invoke(app, ["solve", "--matrix", str(out), "--l", "1", "--inner", "direct"])
        assert result.exit_code == 0, result.output

    def test_needs_a_generator(self, tmp_path):
        result = runner.invoke(app, ["write-matrix", "--out", str(tmp_path / "x.mtx")])
        assert result.exit_code == 1
