"""Minimal self-contained SVG line charts; no plotting dependency.

Each chart is valid SVG 1.1/XML with axes, tick labels, a title, and
exactly one polyline for the plotted series.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import ValidationError

__all__ = ["line_chart", "write_line_chart"]

_WIDTH = 820
_HEIGHT = 520
_MARGIN_LEFT = 70
_MARGIN_RIGHT = 25
_MARGIN_TOP = 50
_MARGIN_BOTTOM = 55
_N_TICKS = 5


def _escape(text: str) -> str:
    return (
        text.replace("&", "&amp;")
        .replace("<", "&lt;")
        .replace(">", "&gt;")
        .replace('"', "&quot;")
    )


def line_chart(x, y, title: str = "") -> str:
    """Render one (x, y) series as an SVG document string."""
    x = np.asarray(x, dtype=np.float64).reshape(-1)
    y = np.asarray(y, dtype=np.float64).reshape(-1)
    if x.shape != y.shape or x.shape[0] < 2:
        raise ValidationError("line_chart needs matching x/y vectors of length >= 2")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise ValidationError("cannot plot non-finite values")

    x_min, x_max = float(x.min()), float(x.max())
    y_min, y_max = float(y.min()), float(y.max())
    if x_max == x_min:
        x_min, x_max = x_min - 1.0, x_max + 1.0
    if y_max == y_min:
        y_min, y_max = y_min - 1.0, y_max + 1.0
    pad = 0.05 * (y_max - y_min)
    y_min -= pad
    y_max += pad

    plot_l, plot_r = _MARGIN_LEFT, _WIDTH - _MARGIN_RIGHT
    plot_t, plot_b = _MARGIN_TOP, _HEIGHT - _MARGIN_BOTTOM

    def px(v):
        return plot_l + (v - x_min) / (x_max - x_min) * (plot_r - plot_l)

    def py(v):
        return plot_b - (v - y_min) / (y_max - y_min) * (plot_b - plot_t)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_WIDTH}" height="{_HEIGHT}" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        '<rect x="0" y="0" width="100%" height="100%" fill="#ffffff"/>',
        f'<text x="{_WIDTH / 2:.1f}" y="28" text-anchor="middle" '
        f'font-size="18" font-family="sans-serif">{_escape(title)}</text>',
    ]
    for i in range(_N_TICKS + 1):
        yv = y_min + (y_max - y_min) * i / _N_TICKS
        yp = py(yv)
        parts.append(
            f'<line x1="{plot_l}" y1="{yp:.2f}" x2="{plot_r}" y2="{yp:.2f}" '
            f'stroke="#dddddd" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{plot_l - 8}" y="{yp + 4:.2f}" text-anchor="end" '
            f'font-size="11" font-family="sans-serif">{yv:.4g}</text>'
        )
        xv = x_min + (x_max - x_min) * i / _N_TICKS
        xp = px(xv)
        parts.append(
            f'<text x="{xp:.2f}" y="{plot_b + 20}" text-anchor="middle" '
            f'font-size="11" font-family="sans-serif">{xv:.4g}</text>'
        )
    parts.append(
        f'<line x1="{plot_l}" y1="{plot_b}" x2="{plot_r}" y2="{plot_b}" '
        f'stroke="#000000" stroke-width="1.5"/>'
    )
    parts.append(
        f'<line x1="{plot_l}" y1="{plot_t}" x2="{plot_l}" y2="{plot_b}" '
        f'stroke="#000000" stroke-width="1.5"/>'
    )
    points = " ".join(f"{px(a):.2f},{py(b):.2f}" for a, b in zip(x, y))
    parts.append(
        f'<polyline fill="none" stroke="#1f77b4" stroke-width="1.5" '
        f'points="{points}"/>'
    )
    parts.append("</svg>")
    return "\n".join(parts)


def write_line_chart(path, x, y, title: str = "") -> None:
    Path(path).write_text(line_chart(x, y, title), encoding="utf-8")
