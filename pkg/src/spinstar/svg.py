"""Minimal deterministic SVG line plots."""
from __future__ import annotations

import math
from dataclasses import dataclass
from xml.sax.saxutils import escape

import numpy as np

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f")
WIDTH, HEIGHT = 640, 420
LEFT, RIGHT, TOP, BOTTOM = 70, 150, 40, 50


@dataclass(frozen=True)
class Curve:
    label: str
    y: np.ndarray


def _ticks(lo: float, hi: float, log: bool) -> list[float]:
    if log:
        return [10.0**e for e in range(math.floor(lo), math.ceil(hi) + 1) if lo <= e <= hi]
    span = hi - lo
    raw = span / 5 if span > 0 else 1.0
    step = 10 ** math.floor(math.log10(raw))
    for m in (1, 2, 5, 10):
        if raw <= m * step:
            step *= m
            break
    first = math.ceil(lo / step) * step
    return [first + i * step for i in range(int((hi - first) / step + 1e-9) + 1)]


def _label(v: float) -> str:
    return f"{v:.0e}" if (v != 0 and (abs(v) < 1e-2 or abs(v) >= 1e4)) else f"{v:g}"


def line_plot(x, curves, title="", x_label="", y_label="", ylim=None,
              logx=False, logy=False) -> str:
    x = np.asarray(x, dtype=float)
    tx = np.log10(x) if logx else x
    ys = []
    for c in curves:
        y = np.asarray(c.y, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            ys.append(np.log10(y) if logy else y)
    finite = np.concatenate([y[np.isfinite(y)] for y in ys] or [np.array([0.0])])
    if ylim is not None:
        lo, hi = (np.log10(v) if logy else v for v in ylim)
    else:
        lo, hi = (float(finite.min()), float(finite.max())) if finite.size else (0.0, 1.0)
    if hi <= lo:
        lo, hi = lo - 0.5, hi + 0.5
    xlo, xhi = float(np.nanmin(tx)), float(np.nanmax(tx))
    if xhi <= xlo:
        xhi = xlo + 1
    pw, ph = WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM

    def px(v):
        return LEFT + (v - xlo) / (xhi - xlo) * pw

    def py(v):
        # clamp far outside the window so coordinates stay finite and short
        v = min(max(v, lo - 10 * (hi - lo)), hi + 10 * (hi - lo))
        return TOP + ph - (v - lo) / (hi - lo) * ph

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
           f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
           '<rect width="100%" height="100%" fill="white"/>',
           f'<defs><clipPath id="plot"><rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}"/></clipPath></defs>',
           f'<text x="{WIDTH / 2:.1f}" y="22" text-anchor="middle" font-size="14">{escape(title)}</text>',
           f'<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>']
    for t in _ticks(xlo, xhi, logx):
        xv = px(t)
        out.append(f'<line x1="{xv:.2f}" y1="{TOP + ph}" x2="{xv:.2f}" y2="{TOP + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{xv:.2f}" y="{TOP + ph + 18}" text-anchor="middle">'
                   f'{_label(10**t if logx else t)}</text>')
    for t in _ticks(lo, hi, logy):
        yv = py(t)
        out.append(f'<line x1="{LEFT - 5}" y1="{yv:.2f}" x2="{LEFT}" y2="{yv:.2f}" stroke="black"/>')
        out.append(f'<text x="{LEFT - 8}" y="{yv + 4:.2f}" text-anchor="end">{_label(10**t if logy else t)}</text>')
    out.append(f'<text x="{LEFT + pw / 2:.1f}" y="{HEIGHT - 12}" text-anchor="middle">{escape(x_label)}</text>')
    out.append(f'<text x="16" y="{TOP + ph / 2:.1f}" text-anchor="middle" '
               f'transform="rotate(-90 16 {TOP + ph / 2:.1f})">{escape(y_label)}</text>')
    for i, (c, y) in enumerate(zip(curves, ys)):
        color = PALETTE[i % len(PALETTE)]
        segments, seg = [], []
        for xv, yv in zip(tx, y):
            if np.isfinite(xv) and np.isfinite(yv):
                seg.append(f"{px(xv):.2f},{py(yv):.2f}")
            elif seg:
                segments.append(seg)
                seg = []
        if seg:
            segments.append(seg)
        for s in segments:
            out.append(f'<polyline clip-path="url(#plot)" fill="none" stroke="{color}" '
                       f'stroke-width="1.5" points="{" ".join(s)}"/>')
        ly = TOP + 14 + 18 * i
        out.append(f'<line x1="{LEFT + pw + 10}" y1="{ly}" x2="{LEFT + pw + 30}" y2="{ly}" '
                   f'stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{LEFT + pw + 35}" y="{ly + 4}">{escape(c.label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
