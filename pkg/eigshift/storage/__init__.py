"""File storage: Matrix Market matrices, trace/sweep CSV, SVG charts."""

from .atomic import atomic_open, atomic_write_text
from .matrix_market import read_matrix_market, write_matrix_market
from .svg import Series, line_chart_svg, write_line_chart
from .traces import (
    SWEEP_HEADER,
    TRACE_HEADER,
    SweepRow,
    TraceRecord,
    format_sweep_csv,
    format_trace_csv,
    parse_sweep_csv,
    parse_trace_csv,
    read_trace_csv,
    write_sweep_csv,
    write_trace_csv,
)

__all__ = [
    "atomic_open",
    "atomic_write_text",
    "read_matrix_market",
    "write_matrix_market",
    "Series",
    "line_chart_svg",
    "write_line_chart",
    "TRACE_HEADER",
    "SWEEP_HEADER",
    "TraceRecord",
    "SweepRow",
    "format_trace_csv",
    "parse_trace_csv",
    "read_trace_csv",
    "write_trace_csv",
    "format_sweep_csv",
    "parse_sweep_csv",
    "write_sweep_csv",
]
