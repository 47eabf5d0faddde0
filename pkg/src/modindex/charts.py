"""Static SVG line charts for metric series, one chart per tracked quantity."""
from __future__ import annotations

import math
from pathlib import Path
from xml.sax.saxutils import escape

from .evolution import EvolutionTable

UNIT_INTERVAL_SERIES = frozenset({"avg_p_q", "s_a", "m_i"})

CHART_SERIES = {
    "ncloc": "NCLOC",
    "packages": "packages",
    "classes": "classes",
    "classes_per_package": "average classes per package",
    "functions_per_class": "average functions per class",
    "ncloc_per_class": "average NCLOC per class",
    "avg_p_q": "average package quality",
    "s_a": "system architecture",
    "m_i": "Modularity Index",
}

WIDTH, HEIGHT = 720, 400
LEFT, RIGHT, TOP, BOTTOM = 70, 20, 40, 90


def _nice_step(span: float, target: int = 5) -> float:
    raw = span / target
    mag = 10 ** math.floor(math.log10(raw))
    for m in (1, 2, 2.5, 5, 10):
        if m * mag >= raw:
            return m * mag
    return 10 * mag


def _axis(values: list[float], unit: bool) -> tuple[float, float, float]:
    if unit:
        return 0.0, 1.0, 0.2
    lo, hi = min(values), max(values)
    lo = min(lo, 0.0)
    if hi <= lo:
        hi = lo + 1.0
    step = _nice_step(hi - lo)
    return math.floor(lo / step) * step, math.ceil(hi / step) * step, step


def _num(x: float) -> str:
    return f"{x:.2f}".rstrip("0").rstrip(".")


def _tick_label(v: float, step: float) -> str:
    if step >= 1:
        return f"{v:,.0f}"
    decimals = max(0, -math.floor(math.log10(step)) + (1 if step * 10 % 1 else 0))
    return f"{v:.{decimals}f}"


def render_chart(series_name: str, x_labels, y_values, title: str | None = None) -> str:
    """A self-contained SVG line chart with one marker per point.

    Quality series (``avg_p_q``, ``s_a``, ``m_i``) use a fixed [0, 1] axis;
    other series are auto-scaled to round tick steps starting from zero.
    """
    x_labels = [str(x) for x in x_labels]
    ys = [float(v) for v in y_values]
    if not ys:
        raise ValueError("a chart needs at least one point")
    if len(x_labels) != len(ys):
        raise ValueError("x labels and y values differ in length")
    if title is None:
        title = CHART_SERIES.get(series_name, series_name)
        title = title[:1].upper() + title[1:]
    unit = series_name in UNIT_INTERVAL_SERIES
    y_lo, y_hi, step = _axis(ys, unit)
    plot_w, plot_h = WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM

    def px(i: int) -> float:
        return LEFT + (plot_w * (i + 0.5) / len(ys))

    def py(v: float) -> float:
        v = min(max(v, y_lo), y_hi)
        return TOP + plot_h * (1 - (v - y_lo) / (y_hi - y_lo))

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="11">',
        f'<title>{escape(title)}</title>',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.0f}" y="22" text-anchor="middle" font-size="14">{escape(title)}</text>',
        '<g class="grid" stroke="#dddddd" stroke-width="1">',
    ]
    ticks = []
    n_ticks = int(round((y_hi - y_lo) / step))
    for k in range(n_ticks + 1):
        v = y_lo + k * step
        y = py(v)
        out.append(f'<line x1="{LEFT}" y1="{_num(y)}" x2="{WIDTH - RIGHT}" y2="{_num(y)}"/>')
        ticks.append(f'<text x="{LEFT - 6}" y="{_num(y + 4)}" text-anchor="end">'
                     f'{_tick_label(v, step)}</text>')
    out.append("</g>")
    out.append('<g class="y-ticks">')
    out.extend(ticks)
    out.append("</g>")
    out.append(f'<line class="axis" x1="{LEFT}" y1="{TOP + plot_h}" x2="{WIDTH - RIGHT}" '
               f'y2="{TOP + plot_h}" stroke="black"/>')
    out.append(f'<line class="axis" x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{TOP + plot_h}" '
               f'stroke="black"/>')
    out.append('<g class="x-labels">')
    for i, label in enumerate(x_labels):
        x, y = _num(px(i)), TOP + plot_h + 12
        out.append(f'<text x="{x}" y="{y}" text-anchor="end" '
                   f'transform="rotate(-45 {x} {y})">{escape(label)}</text>')
    out.append("</g>")
    points = " ".join(f"{_num(px(i))},{_num(py(v))}" for i, v in enumerate(ys))
    out.append(f'<polyline class="series" fill="none" stroke="#1f5fa8" stroke-width="2" '
               f'points="{points}"/>')
    out.append('<g class="markers" fill="#1f5fa8">')
    for i, v in enumerate(ys):
        out.append(f'<circle cx="{_num(px(i))}" cy="{_num(py(v))}" r="3.5">'
                   f'<title>{escape(x_labels[i])}: {v:.6g}</title></circle>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_charts(table: EvolutionTable, directory) -> list[Path]:
    """Write one SVG per tracked series into ``directory``; returns the paths."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    labels = [r.label for r in table.rows]
    written = []
    for name, title in CHART_SERIES.items():
        path = directory / f"{name}.svg"
        path.write_text(render_chart(name, labels, table.column(name),
                                     f"Evolution of {title} in {table.project_name}"),
                        encoding="utf-8")
        written.append(path)
    return written
