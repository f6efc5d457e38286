"""
Trace Storage - Per-iteration trace CSV and gap-sweep CSV.

Floats are written in shortest round-trip form (repr), unavailable fields
as empty strings, with LF line endings, so parsing and re-serializing a file
reproduces it byte for byte.
"""

import csv
import io
from dataclasses import astuple, dataclass, fields
from pathlib import Path

from ..errors import ExperimentIOError
from .atomic import atomic_write_text

TRACE_HEADER = ["outer_iter", "inner_step", "i", "ritz_value", "abs_err", "component_ratio", "tau", "residual"]
SWEEP_HEADER = ["gap", "predicted_rate", "measured_rate"]


@dataclass(frozen=True)
class TraceRecord:
    """One row of the trace CSV: block index ``i`` after ``inner_step`` of outer iteration ``outer_iter``."""

    outer_iter: int
    inner_step: int
    i: int
    ritz_value: float
    abs_err: float | None
    component_ratio: float | None
    tau: float | None
    residual: float


@dataclass(frozen=True)
class SweepRow:
    gap: float
    predicted_rate: float
    measured_rate: float | None


def _fmt(value: int | float | None) -> str:
    if value is None:
        return ""
    if isinstance(value, int):
        return str(value)
    return repr(float(value))


def _float_or_none(text: str) -> float | None:
    return None if text == "" else float(text)


def _to_csv(header: list[str], rows: list[tuple]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buffer.getvalue()


def format_trace_csv(records: list[TraceRecord]) -> str:
    return _to_csv(TRACE_HEADER, [astuple(r) for r in records])


def parse_trace_csv(text: str) -> list[TraceRecord]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header != TRACE_HEADER:
        raise ValueError(f"Unexpected trace header: {header}")
    records = []
    for row in reader:
        outer_iter, inner_step, i, ritz, abs_err, ratio, tau, residual = row
        records.append(
            TraceRecord(
                outer_iter=int(outer_iter),
                inner_step=int(inner_step),
                i=int(i),
                ritz_value=float(ritz),
                abs_err=_float_or_none(abs_err),
                component_ratio=_float_or_none(ratio),
                tau=_float_or_none(tau),
                residual=float(residual),
            )
        )
    return records


def write_trace_csv(path: str | Path, records: list[TraceRecord]) -> Path:
    return atomic_write_text(path, format_trace_csv(records))


def read_trace_csv(path: str | Path) -> list[TraceRecord]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ExperimentIOError(path, e.strerror or str(e)) from e
    return parse_trace_csv(text)


def format_sweep_csv(rows: list[SweepRow]) -> str:
    return _to_csv(SWEEP_HEADER, [astuple(r) for r in rows])


def parse_sweep_csv(text: str) -> list[SweepRow]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header != [f.name for f in fields(SweepRow)]:
        raise ValueError(f"Unexpected sweep header: {header}")
    return [SweepRow(float(g), float(p), _float_or_none(m)) for g, p, m in reader]


def write_sweep_csv(path: str | Path, rows: list[SweepRow]) -> Path:
    return atomic_write_text(path, format_sweep_csv(rows))
