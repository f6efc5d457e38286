"""
SVG Charts - Self-contained line charts with an optional log10 y-axis.

No external stylesheets, fonts or scripts; one polyline per series.
"""

import math
from dataclasses import dataclass
from html import escape
from pathlib import Path
from typing import Sequence

from .atomic import atomic_write_text

WIDTH, HEIGHT = 640, 480
MARGIN_LEFT, MARGIN_RIGHT, MARGIN_TOP, MARGIN_BOTTOM = 80, 150, 40, 60
PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"]


@dataclass(frozen=True)
class Series:
    label: str
    x: Sequence[float]
    y: Sequence[float]


def _nice_ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if hi <= lo:
        return [lo]
    raw = (hi - lo) / count
    magnitude = 10 ** math.floor(math.log10(raw))
    step = min((m * magnitude for m in (1, 2, 5, 10) if m * magnitude >= raw), default=raw)
    start = math.ceil(lo / step) * step
    ticks = []
    value = start
    while value <= hi + 1e-12 * step:
        ticks.append(round(value, 12))
        value += step
    return ticks


def _usable(x: float, y: float, log_y: bool) -> bool:
    if not (math.isfinite(x) and math.isfinite(y)):
        return False
    return y > 0.0 if log_y else True


def line_chart_svg(
    series: Sequence[Series],
    title: str,
    x_label: str,
    y_label: str,
    log_y: bool = True,
) -> str:
    """
    Render series as an SVG document.

    On a log axis non-positive points are dropped and break the line.
    """
    points = [(float(x), float(y)) for s in series for x, y in zip(s.x, s.y) if _usable(float(x), float(y), log_y)]
    fy = (lambda v: math.log10(v)) if log_y else (lambda v: v)

    if points:
        x_lo, x_hi = min(p[0] for p in points), max(p[0] for p in points)
        y_vals = [fy(p[1]) for p in points]
        y_lo, y_hi = min(y_vals), max(y_vals)
    else:
        x_lo, x_hi, y_lo, y_hi = 0.0, 1.0, 0.0, 1.0
    if log_y:
        y_lo, y_hi = math.floor(y_lo), math.ceil(y_hi)
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    if y_hi == y_lo:
        y_hi = y_lo + 1.0

    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def px(x: float) -> float:
        return MARGIN_LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w

    def py(y: float) -> float:
        return MARGIN_TOP + (1.0 - (fy(y) - y_lo) / (y_hi - y_lo)) * plot_h

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.1f}" y="22" text-anchor="middle" font-family="sans-serif" font-size="15">{escape(title)}</text>',
        f'<rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>',
    ]

    for tx in _nice_ticks(x_lo, x_hi):
        x = px(tx)
        out.append(f'<line x1="{x:.2f}" y1="{MARGIN_TOP + plot_h}" x2="{x:.2f}" y2="{MARGIN_TOP + plot_h + 5}" stroke="black"/>')
        out.append(
            f'<text x="{x:.2f}" y="{MARGIN_TOP + plot_h + 20}" text-anchor="middle" font-family="sans-serif" font-size="11">{tx:g}</text>'
        )

    y_ticks = range(int(y_lo), int(y_hi) + 1) if log_y else _nice_ticks(y_lo, y_hi)
    for ty in y_ticks:
        y = MARGIN_TOP + (1.0 - (ty - y_lo) / (y_hi - y_lo)) * plot_h
        label = f"1e{ty}" if log_y else f"{ty:g}"
        out.append(f'<line x1="{MARGIN_LEFT - 5}" y1="{y:.2f}" x2="{MARGIN_LEFT + plot_w}" y2="{y:.2f}" stroke="#dddddd"/>')
        out.append(
            f'<text x="{MARGIN_LEFT - 8}" y="{y + 4:.2f}" text-anchor="end" font-family="sans-serif" font-size="11">{label}</text>'
        )

    out.append(
        f'<text x="{MARGIN_LEFT + plot_w / 2:.1f}" y="{HEIGHT - 15}" text-anchor="middle" font-family="sans-serif" font-size="13">{escape(x_label)}</text>'
    )
    y_mid = MARGIN_TOP + plot_h / 2
    y_axis_label = f"{y_label} (log10)" if log_y else y_label
    out.append(
        f'<text x="20" y="{y_mid:.1f}" text-anchor="middle" font-family="sans-serif" font-size="13" transform="rotate(-90 20 {y_mid:.1f})">{escape(y_axis_label)}</text>'
    )

    for idx, s in enumerate(series):
        color = PALETTE[idx % len(PALETTE)]
        segment: list[str] = []
        segments: list[list[str]] = []
        for x, y in zip(s.x, s.y):
            if _usable(float(x), float(y), log_y):
                segment.append(f"{px(float(x)):.2f},{py(float(y)):.2f}")
            elif segment:
                segments.append(segment)
                segment = []
        if segment:
            segments.append(segment)
        for seg in segments:
            out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{" ".join(seg)}"/>')

        ly = MARGIN_TOP + 15 + 18 * idx
        lx = MARGIN_LEFT + plot_w + 12
        out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 20}" y2="{ly}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{lx + 26}" y="{ly + 4}" font-family="sans-serif" font-size="11">{escape(s.label)}</text>')

    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_line_chart(path: str | Path, series: Sequence[Series], title: str, x_label: str, y_label: str, log_y: bool = True) -> Path:
    return atomic_write_text(path, line_chart_svg(series, title, x_label, y_label, log_y))
