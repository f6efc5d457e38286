import numpy as np
import pytest
from scipy import io as spio
from scipy import sparse

from eigshift.errors import ExperimentIOError, MatrixMarketError
from eigshift.linalg import DenseSymMatrix
from eigshift.storage import (
    SWEEP_HEADER,
    TRACE_HEADER,
    Series,
    SweepRow,
    TraceRecord,
    atomic_open,
    atomic_write_text,
    format_sweep_csv,
    format_trace_csv,
    line_chart_svg,
    parse_sweep_csv,
    parse_trace_csv,
    read_matrix_market,
    read_trace_csv,
    write_matrix_market,
    write_trace_csv,
)
from eigshift.storage import atomic as atomic_module


class TestMatrixMarket:
    def test_array_round_trip(self, tmp_path, random_symmetric):
        A = random_symmetric(7, 4)
        path = write_matrix_market(tmp_path / "a.mtx", A, comment="random")
        assert path == tmp_path / "a.mtx"
        header = path.read_text().splitlines()[0]
        assert header.split()[1:] == ["matrix", "array", "real", "symmetric"]
        np.testing.assert_array_equal(read_matrix_market(path).entries, A.entries)

    def test_example_matrix_is_exact(self, tmp_path, example_matrix):
        path = write_matrix_market(tmp_path / "example.mtx", example_matrix)
        assert read_matrix_market(path).entries[2, 2] == 2.01

    def test_coordinate_symmetric(self, tmp_path):
        dense = np.array([[2.0, -1.0, 0.0], [-1.0, 2.0, -1.0], [0.0, -1.0, 2.0]])
        spio.mmwrite(str(tmp_path / "lap.mtx"), sparse.coo_matrix(dense), symmetry="symmetric")
        np.testing.assert_array_equal(read_matrix_market(tmp_path / "lap.mtx").entries, dense)

    def test_rejects_general(self, tmp_path):
        spio.mmwrite(str(tmp_path / "g.mtx"), np.array([[1.0, 2.0], [3.0, 4.0]]))
        with pytest.raises(MatrixMarketError):
            read_matrix_market(tmp_path / "g.mtx")

    def test_rejects_complex(self, tmp_path):
        spio.mmwrite(str(tmp_path / "c.mtx"), np.array([[1.0 + 1.0j, 0.0], [0.0, 1.0]]))
        with pytest.raises(MatrixMarketError):
            read_matrix_market(tmp_path / "c.mtx")

    def test_rejects_garbage(self, tmp_path):
        (tmp_path / "bad.mtx").write_text("hello\n")
        with pytest.raises(MatrixMarketError):
            read_matrix_market(tmp_path / "bad.mtx")

    def test_missing_file(self, tmp_path):
        with pytest.raises(ExperimentIOError) as info:
            read_matrix_market(tmp_path / "nope.mtx")
        assert info.value.exit_code == 3


RECORDS = [
    TraceRecord(1, 1, 0, 1.0000000000000002, 2.220446049250313e-16, 0.1, 0.005, 1e-9),
    TraceRecord(1, 1, 1, 2.01, None, None, None, 0.25),
    TraceRecord(2, 3, 0, -3.5, 0.0, 0.0, -0.75, 0.0),
]


class TestTraceCsv:
    def test_header_and_empty_fields(self):
        lines = format_trace_csv(RECORDS).splitlines()
        assert lines[0] == ",".join(TRACE_HEADER)
        assert lines[2] == "1,1,1,2.01,,,,0.25"

    def test_parse_restores_records(self):
        assert parse_trace_csv(format_trace_csv(RECORDS)) == RECORDS

    def test_lf_line_endings(self):
        text = format_trace_csv(RECORDS)
        assert "\r" not in text
        assert text.endswith("\n")

    def test_file_round_trip_is_byte_identical(self, tmp_path):
        path = write_trace_csv(tmp_path / "t.csv", RECORDS)
        original = path.read_bytes()
        write_trace_csv(tmp_path / "again.csv", read_trace_csv(path))
        assert (tmp_path / "again.csv").read_bytes() == original

    def test_rejects_wrong_header(self):
        with pytest.raises(ValueError):
            parse_trace_csv("a,b,c\n1,2,3\n")

    def test_read_missing(self, tmp_path):
        with pytest.raises(ExperimentIOError):
            read_trace_csv(tmp_path / "missing.csv")


class TestSweepCsv:
    def test_round_trip(self):
        rows = [SweepRow(0.01, 1.99 / 2.01, 0.9901), SweepRow(1.0, 1.0 / 3.0, None)]
        text = format_sweep_csv(rows)
        assert text.splitlines()[0] == ",".join(SWEEP_HEADER)
        assert text.splitlines()[2].endswith(",")
        assert parse_sweep_csv(text) == rows


class TestSvg:
    def test_one_polyline_per_series(self):
        svg = line_chart_svg(
            [Series("a", [1, 2, 3], [1.0, 0.1, 0.01]), Series("b", [1, 2, 3], [0.5, 0.05, 0.005])],
            title="errors",
            x_label="k",
            y_label="err",
        )
        assert svg.startswith('<svg xmlns="http://www.w3.org/2000/svg"')
        assert svg.count("<polyline") == 2

    def test_self_contained(self):
        svg = line_chart_svg([Series("a", [1, 2], [1.0, 2.0])], "t", "x", "y")
        for reference in ("href", "<script", "url(", "@import", "<link"):
            assert reference not in svg

    def test_log_ticks(self):
        svg = line_chart_svg([Series("a", [1, 2, 3], [1.0, 0.1, 0.01])], "t", "x", "y")
        for label in (">1e-2<", ">1e-1<", ">1e0<"):
            assert label in svg

    def test_non_positive_values_break_the_line(self):
        svg = line_chart_svg([Series("a", [1, 2, 3, 4], [1.0, 0.0, 0.1, 0.01])], "t", "x", "y")
        assert svg.count("<polyline") == 2

    def test_linear_axis_keeps_zero(self):
        svg = line_chart_svg([Series("a", [1, 2, 3], [1.0, 0.0, 0.5])], "t", "x", "y", log_y=False)
        assert svg.count("<polyline") == 1

    def test_escapes_labels(self):
        svg = line_chart_svg([Series("<b>", [1], [1.0])], "a & b", "x", "y")
        assert "a &amp; b" in svg
        assert "&lt;b&gt;" in svg

    def test_empty_series(self):
        svg = line_chart_svg([Series("a", [], [])], "t", "x", "y")
        assert "<polyline" not in svg
        assert svg.rstrip().endswith("</svg>")


class TestAtomicWrites:
    def test_creates_parent_directories(self, tmp_path):
        path = atomic_write_text(tmp_path / "a" / "b" / "c.txt", "hello\n")
        assert path.read_text() == "hello\n"
        assert list(path.parent.iterdir()) == [path]

    def test_failed_block_keeps_previous_file(self, tmp_path):
        path = tmp_path / "keep.txt"
        path.write_text("old")
        with pytest.raises(RuntimeError):
            with atomic_open(path) as f:
                f.write("partial")
                raise RuntimeError("boom")
        assert path.read_text() == "old"
        assert list(tmp_path.iterdir()) == [path]

    def test_failed_rename_is_io_error(self, tmp_path, monkeypatch):
        def refuse(src, dst):
            raise PermissionError(13, "Permission denied")

        monkeypatch.setattr(atomic_module.os, "replace", refuse)
        with pytest.raises(ExperimentIOError) as info:
            atomic_write_text(tmp_path / "x.csv", "data")
        assert "Permission denied" in str(info.value)
        assert list(tmp_path.iterdir()) == []

    def test_parent_is_a_file(self, tmp_path):
        (tmp_path / "file").write_text("")
        with pytest.raises(ExperimentIOError):
            atomic_write_text(tmp_path / "file" / "x.csv", "data")

    def test_written_matrix_is_valid_input(self, tmp_path):
        A = DenseSymMatrix(np.diag([1.0, 2.0]))
        write_matrix_market(tmp_path / "m.mtx", A)
        assert [p.name for p in tmp_path.iterdir()] == ["m.mtx"]
