"""Minimal dependency-free SVG line charts (log-scale y axis).

Just enough for the bound-comparison figure: axes, power-of-ten y ticks,
one polyline per series, and a legend.
"""

from __future__ import annotations

import math
from pathlib import Path

_WIDTH = 640
_HEIGHT = 440
_MARGIN_LEFT = 70
_MARGIN_RIGHT = 20
_MARGIN_TOP = 40
_MARGIN_BOTTOM = 50
_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def write_line_chart_svg(path, x_values, series, title, x_label, y_label) -> None:
    """Render ``series`` (name -> positive values over ``x_values``) as a
    log-y line chart and write it to ``path``."""
    if not x_values:
        raise ValueError("chart needs at least one x value")
    names = list(series)
    all_y = [y for name in names for y in series[name]]
    if not all_y or min(all_y) <= 0:
        raise ValueError("log-scale chart needs strictly positive values")

    x_min, x_max = min(x_values), max(x_values)
    x_span = (x_max - x_min) or 1.0
    log_min = math.floor(math.log10(min(all_y)))
    log_max = math.ceil(math.log10(max(all_y)))
    if log_min == log_max:
        log_min -= 1
        log_max += 1
    plot_w = _WIDTH - _MARGIN_LEFT - _MARGIN_RIGHT
    plot_h = _HEIGHT - _MARGIN_TOP - _MARGIN_BOTTOM

    def sx(x):
        return _MARGIN_LEFT + (x - x_min) / x_span * plot_w

    def sy(y):
        frac = (math.log10(y) - log_min) / (log_max - log_min)
        return _MARGIN_TOP + (1.0 - frac) * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<text x="{_WIDTH / 2:.1f}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="15">{title}</text>',
    ]
    # axes
    x0, y0 = _MARGIN_LEFT, _MARGIN_TOP + plot_h
    parts.append(
        f'<line x1="{x0}" y1="{_MARGIN_TOP}" x2="{x0}" y2="{y0}" stroke="black"/>'
    )
    parts.append(
        f'<line x1="{x0}" y1="{y0}" x2="{x0 + plot_w}" y2="{y0}" stroke="black"/>'
    )
    for exponent in range(log_min, log_max + 1):
        y = sy(10.0 ** exponent)
        parts.append(
            f'<line x1="{x0 - 4}" y1="{y:.1f}" x2="{x0 + plot_w}" y2="{y:.1f}" '
            f'stroke="#dddddd"/>'
        )
        parts.append(
            f'<text x="{x0 - 8}" y="{y + 4:.1f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">1e{exponent}</text>'
        )
    x_tick_count = min(len(set(x_values)), 8)
    for k in range(x_tick_count):
        x = x_min + k * x_span / max(x_tick_count - 1, 1)
        parts.append(
            f'<line x1="{sx(x):.1f}" y1="{y0}" x2="{sx(x):.1f}" y2="{y0 + 4}" '
            f'stroke="black"/>'
        )
        parts.append(
            f'<text x="{sx(x):.1f}" y="{y0 + 18}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{x:g}</text>'
        )
    parts.append(
        f'<text x="{x0 + plot_w / 2:.1f}" y="{_HEIGHT - 10}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13">{x_label}</text>'
    )
    parts.append(
        f'<text x="16" y="{_MARGIN_TOP + plot_h / 2:.1f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13" '
        f'transform="rotate(-90 16 {_MARGIN_TOP + plot_h / 2:.1f})">{y_label}</text>'
    )
    # series + legend
    for idx, name in enumerate(names):
        color = _PALETTE[idx % len(_PALETTE)]
        points = " ".join(
            f"{sx(x):.2f},{sy(y):.2f}" for x, y in zip(x_values, series[name])
        )
        parts.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.8" '
            f'points="{points}"/>'
        )
        ly = _MARGIN_TOP + 14 + idx * 16
        lx = _MARGIN_LEFT + plot_w - 170
        parts.append(
            f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 22}" y2="{ly - 4}" '
            f'stroke="{color}" stroke-width="1.8"/>'
        )
        parts.append(
            f'<text x="{lx + 28}" y="{ly}" font-family="sans-serif" '
            f'font-size="11">{name}</text>'
        )
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts) + "\n")
