"""Minimal SVG line charts, no plotting dependency.

Enough for sweep/fit diagnostics: multiple named series, optional log-y,
ticks and axis labels. Output is a plain SVG string; write it to a file and
open in any browser.
"""
from __future__ import annotations

import math

from .errors import InputError

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
           "#8c564b", "#e377c2", "#17becf", "#7f7f7f")

_W, _H = 720, 480
_ML, _MR, _MT, _MB = 72, 24, 36, 56


def _nice_ticks(lo: float, hi: float, n: int = 6):
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / max(n - 1, 1)
    mag = 10.0 ** math.floor(math.log10(raw))
    step = next(s * mag for s in (1, 2, 2.5, 5, 10) if s * mag >= raw)
    t0 = math.ceil(lo / step) * step
    ticks = []
    t = t0
    while t <= hi + 1e-9 * step:
        ticks.append(round(t, 10))
        t += step
    return ticks


def _fmt(v: float) -> str:
    if v == 0:
        return "0"
    if abs(v) < 1e-3 or abs(v) >= 1e5:
        return f"{v:.1e}"
    s = f"{v:.4g}"
    return s


def line_chart(series, *, title: str = "", x_label: str = "", y_label: str = "",
               log_y: bool = False, y_floor: float | None = None) -> str:
    """Render named (x, y) series to an SVG string.

    series: list of (name, xs, ys). With log_y, non-positive y values are
    dropped (a fully non-positive chart is an error); y_floor clips the
    visible range from below.
    """
    pts = []
    for name, xs, ys in series:
        if len(xs) != len(ys):
            raise InputError(f"series {name!r}: x and y lengths differ")
        keep = [(float(x), float(y)) for x, y in zip(xs, ys)
                if not log_y or y > 0.0]
        pts.append((name, keep))
    allx = [x for _, kp in pts for x, _ in kp]
    ally = [y for _, kp in pts for _, y in kp]
    if not allx:
        raise InputError("nothing to plot")
    x_lo, x_hi = min(allx), max(allx)
    y_lo, y_hi = min(ally), max(ally)
    if y_floor is not None:
        y_lo = max(y_lo, y_floor)
    if x_hi == x_lo:
        x_hi = x_lo + 1.0

    if log_y:
        y_lo, y_hi = math.log10(y_lo), math.log10(max(y_hi, y_lo * 1.0000001))
        if y_hi == y_lo:
            y_hi = y_lo + 1.0
        yticks = list(range(math.floor(y_lo), math.ceil(y_hi) + 1))
        ytick_pairs = [(t, f"1e{t}") for t in yticks]
    else:
        if y_hi == y_lo:
            y_hi = y_lo + 1.0
        ytick_pairs = [(t, _fmt(t)) for t in _nice_ticks(y_lo, y_hi)]
    xticks = _nice_ticks(x_lo, x_hi)

    pw, ph = _W - _ML - _MR, _H - _MT - _MB

    def X(x):
        return _ML + (x - x_lo) / (x_hi - x_lo) * pw

    def Y(y):
        v = math.log10(y) if log_y else y
        v = min(max(v, y_lo), y_hi)
        return _MT + ph - (v - y_lo) / (y_hi - y_lo) * ph

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
           f'viewBox="0 0 {_W} {_H}" font-family="sans-serif" font-size="12">',
           f'<rect width="{_W}" height="{_H}" fill="white"/>']
    if title:
        out.append(f'<text x="{_W / 2:.0f}" y="22" text-anchor="middle" font-size="15">{title}</text>')
    out.append(f'<rect x="{_ML}" y="{_MT}" width="{pw}" height="{ph}" fill="none" stroke="#444"/>')

    for t in xticks:
        if not x_lo <= t <= x_hi:
            continue
        px = X(t)
        out.append(f'<line x1="{px:.1f}" y1="{_MT + ph}" x2="{px:.1f}" y2="{_MT + ph + 5}" stroke="#444"/>')
        out.append(f'<line x1="{px:.1f}" y1="{_MT}" x2="{px:.1f}" y2="{_MT + ph}" stroke="#ddd"/>')
        out.append(f'<text x="{px:.1f}" y="{_MT + ph + 20}" text-anchor="middle">{_fmt(t)}</text>')
    for tv, tl in ytick_pairs:
        if not y_lo - 1e-12 <= tv <= y_hi + 1e-12:
            continue
        py = _MT + ph - (tv - y_lo) / (y_hi - y_lo) * ph
        out.append(f'<line x1="{_ML - 5}" y1="{py:.1f}" x2="{_ML}" y2="{py:.1f}" stroke="#444"/>')
        out.append(f'<line x1="{_ML}" y1="{py:.1f}" x2="{_ML + pw}" y2="{py:.1f}" stroke="#ddd"/>')
        out.append(f'<text x="{_ML - 9}" y="{py + 4:.1f}" text-anchor="end">{tl}</text>')
    if x_label:
        out.append(f'<text x="{_ML + pw / 2:.0f}" y="{_H - 12}" text-anchor="middle">{x_label}</text>')
    if y_label:
        out.append(f'<text x="18" y="{_MT + ph / 2:.0f}" text-anchor="middle" '
                   f'transform="rotate(-90 18 {_MT + ph / 2:.0f})">{y_label}</text>')

    for i, (name, kp) in enumerate(pts):
        color = PALETTE[i % len(PALETTE)]
        if kp:
            path = " ".join(f"{X(x):.1f},{Y(y):.1f}" for x, y in kp)
            out.append(f'<polyline points="{path}" fill="none" stroke="{color}" stroke-width="1.8"/>')
            for x, y in kp:
                out.append(f'<circle cx="{X(x):.1f}" cy="{Y(y):.1f}" r="2.6" fill="{color}"/>')
        ly = _MT + 14 + 16 * i
        out.append(f'<line x1="{_ML + pw - 130}" y1="{ly - 4}" x2="{_ML + pw - 106}" y2="{ly - 4}" '
                   f'stroke="{color}" stroke-width="1.8"/>')
        out.append(f'<text x="{_ML + pw - 100}" y="{ly}">{name}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
