"""Minimal SVG line plots (polyline + axes), no plotting dependency."""

from __future__ import annotations

from xml.sax.saxutils import escape

import numpy as np

__all__ = ["svg_line_plot"]

_COLORS = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"]


def svg_line_plot(path: str, series: list[tuple[str, np.ndarray, np.ndarray]],
                  title: str, xlabel: str, ylabel: str,
                  width: int = 640, height: int = 420) -> None:
    """Write one SVG with a polyline per (label, xs, ys) series."""
    ml, mr, mt, mb = 70, 20, 40, 50
    pw, ph = width - ml - mr, height - mt - mb

    all_x = np.concatenate([np.asarray(xs, dtype=float) for _, xs, _ in series])
    all_y = np.concatenate([np.asarray(ys, dtype=float) for _, _, ys in series])
    x0, x1 = float(all_x.min()), float(all_x.max())
    y0, y1 = float(all_y.min()), float(all_y.max())
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y1 = y0 + 1.0

    def sx(x):
        return ml + (x - x0) / (x1 - x0) * pw

    def sy(y):
        return mt + ph - (y - y0) / (y1 - y0) * ph

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2}" y="24" text-anchor="middle" font-size="15">{escape(title)}</text>',
        f'<line x1="{ml}" y1="{mt + ph}" x2="{ml + pw}" y2="{mt + ph}" stroke="black"/>',
        f'<line x1="{ml}" y1="{mt}" x2="{ml}" y2="{mt + ph}" stroke="black"/>',
        f'<text x="{ml + pw / 2}" y="{height - 12}" text-anchor="middle" font-size="12">{escape(xlabel)}</text>',
        f'<text x="16" y="{mt + ph / 2}" text-anchor="middle" font-size="12" '
        f'transform="rotate(-90 16 {mt + ph / 2})">{escape(ylabel)}</text>',
        f'<text x="{ml}" y="{mt + ph + 16}" text-anchor="middle" font-size="10">{x0:g}</text>',
        f'<text x="{ml + pw}" y="{mt + ph + 16}" text-anchor="middle" font-size="10">{x1:g}</text>',
        f'<text x="{ml - 6}" y="{mt + ph}" text-anchor="end" font-size="10">{y0:g}</text>',
        f'<text x="{ml - 6}" y="{mt + 10}" text-anchor="end" font-size="10">{y1:g}</text>',
    ]
    for k, (label, xs, ys) in enumerate(series):
        color = _COLORS[k % len(_COLORS)]
        pts = " ".join(f"{sx(float(x)):.2f},{sy(float(y)):.2f}" for x, y in zip(xs, ys))
        parts.append(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        parts.append(f'<text x="{ml + pw - 6}" y="{mt + 16 + 14 * k}" text-anchor="end" '
                     f'font-size="11" fill="{color}">{escape(label)}</text>')
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(parts) + "\n")
