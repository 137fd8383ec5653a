"""Deterministic CSV, SVG and run-manifest emission.

Floats are written with ``repr`` (shortest round-trip form, '.' decimal
separator, locale independent). SVG is emitted as plain markup so the bytes
depend only on the plotted numbers.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Iterable, Optional, Sequence
from xml.sax.saxutils import escape

import numpy as np

from . import __version__
from .constants import CONSTANTS
from .fixtures import checksum


def fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def csv_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(fmt(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def write_text(path, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def manifest(command: str, inputs: dict, outputs: Sequence, args: Optional[dict] = None) -> dict:
    """Provenance record written next to every output file."""
    return {
        "command": command,
        "tool_version": __version__,
        "constants": dict(CONSTANTS),
        "inputs": {role: {"path": str(p), "sha256": checksum(p)} for role, p in sorted(inputs.items())},
        "outputs": [str(p) for p in outputs],
        "arguments": args or {},
    }


def write_manifest(path, data: dict) -> None:
    write_text(path, json.dumps(data, indent=2, sort_keys=True) + "\n")


# --- SVG ---------------------------------------------------------------------

W, H = 640, 420
LEFT, RIGHT, TOP, BOTTOM = 80, 20, 40, 60


def _c(v: float) -> str:
    return f"{v:.2f}"


def _svg(body: list[str], title: str) -> str:
    head = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">',
        f'<rect x="0" y="0" width="{W}" height="{H}" fill="white"/>',
        f'<text x="{W / 2:.2f}" y="24" text-anchor="middle" font-family="sans-serif" '
        f'font-size="15">{escape(title)}</text>',
    ]
    return "\n".join(head + body + ["</svg>"]) + "\n"


def _axes(xlabel: str, ylabel: str) -> list[str]:
    x0, y0, x1, y1 = LEFT, H - BOTTOM, W - RIGHT, TOP
    return [
        f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black"/>',
        f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black"/>',
        f'<text x="{(x0 + x1) / 2:.2f}" y="{H - 15}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">{escape(xlabel)}</text>',
        f'<text x="18" y="{(y0 + y1) / 2:.2f}" text-anchor="middle" font-family="sans-serif" '
        f'font-size="12" transform="rotate(-90 18 {(y0 + y1) / 2:.2f})">{escape(ylabel)}</text>',
    ]


def _ytick(y: float, label: str) -> list[str]:
    return [
        f'<line x1="{LEFT - 5}" y1="{_c(y)}" x2="{LEFT}" y2="{_c(y)}" stroke="black"/>',
        f'<text x="{LEFT - 8}" y="{_c(y + 4)}" text-anchor="end" font-family="sans-serif" '
        f'font-size="11">{escape(label)}</text>',
    ]


def bar_chart_svg(labels: Sequence[str], values: Sequence[float], title: str,
                  ylabel: str) -> str:
    """Bar chart on a log10 value axis (zeros are drawn as empty bars)."""
    pos = [v for v in values if v > 0]
    lo = math.floor(math.log10(min(pos))) if pos else -1
    hi = math.ceil(math.log10(max(pos))) if pos else 0
    if hi == lo:
        hi += 1
    span_y = (H - BOTTOM) - TOP

    def ymap(v):
        return (H - BOTTOM) - (math.log10(v) - lo) / (hi - lo) * span_y

    body = _axes("", ylabel)
    for e in range(lo, hi + 1):
        body += _ytick(ymap(10.0 ** e), f"1e{e}")
    n = len(values)
    slot = (W - RIGHT - LEFT) / max(n, 1)
    for i, (lab, v) in enumerate(zip(labels, values)):
        x = LEFT + slot * (i + 0.2)
        w = slot * 0.6
        top = ymap(v) if v > 0 else H - BOTTOM
        body.append(f'<rect x="{_c(x)}" y="{_c(top)}" width="{_c(w)}" '
                    f'height="{_c(H - BOTTOM - top)}" fill="#4a7ab5"/>')
        body.append(f'<text x="{_c(x + w / 2)}" y="{_c(top - 6)}" text-anchor="middle" '
                    f'font-family="sans-serif" font-size="11">{escape(f"{v:.3g}")}</text>')
        body.append(f'<text x="{_c(x + w / 2)}" y="{H - BOTTOM + 18}" text-anchor="middle" '
                    f'font-family="sans-serif" font-size="12">{escape(lab)}</text>')
    return _svg(body, title)


def line_plot_svg(x: Sequence[float], y: Sequence[float], title: str, xlabel: str,
                  ylabel: str) -> str:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    x_lo, x_hi = float(x.min()), float(x.max())
    y_hi = float(y.max()) if y.size and y.max() > 0 else 1.0
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    sx = (W - RIGHT - LEFT) / (x_hi - x_lo)
    sy = ((H - BOTTOM) - TOP) / y_hi
    body = _axes(xlabel, ylabel)
    for k in range(5):
        yv = y_hi * k / 4
        body += _ytick((H - BOTTOM) - yv * sy, f"{yv:.3g}")
    for k in range(5):
        xv = x_lo + (x_hi - x_lo) * k / 4
        xp = LEFT + (xv - x_lo) * sx
        body.append(f'<line x1="{_c(xp)}" y1="{H - BOTTOM}" x2="{_c(xp)}" y2="{H - BOTTOM + 5}" stroke="black"/>')
        body.append(f'<text x="{_c(xp)}" y="{H - BOTTOM + 18}" text-anchor="middle" '
                    f'font-family="sans-serif" font-size="11">{escape(f"{xv:.3g}")}</text>')
    pts = " ".join(f"{_c(LEFT + (a - x_lo) * sx)},{_c((H - BOTTOM) - b * sy)}" for a, b in zip(x, y))
    body.append(f'<polyline fill="none" stroke="#c0392b" stroke-width="2" points="{pts}"/>')
    return _svg(body, title)


def heatmap_svg(xs: Sequence[float], ys: Sequence[float], values: Sequence[float],
                step: float, title: str, label: str) -> str:
    """Cells coloured by log10(value), blue (low) to red (high)."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    v = np.log10(np.maximum(np.asarray(values, dtype=float), 1e-300))
    v_lo, v_hi = float(v.min()), float(v.max())
    scale = 1.0 / (v_hi - v_lo) if v_hi > v_lo else 0.0
    x_lo, x_hi = float(xs.min()) - step / 2, float(xs.max()) + step / 2
    y_lo, y_hi = float(ys.min()) - step / 2, float(ys.max()) + step / 2
    sx = (W - RIGHT - LEFT) / (x_hi - x_lo)
    sy = ((H - BOTTOM) - TOP) / (y_hi - y_lo)
    body = _axes("x (m)", "y (m)")
    for a, b, c in zip(xs, ys, v):
        t = (c - v_lo) * scale
        r, g, bl = int(255 * t), int(80 + 60 * (1 - abs(2 * t - 1))), int(255 * (1 - t))
        px = LEFT + (a - step / 2 - x_lo) * sx
        py = (H - BOTTOM) - (b + step / 2 - y_lo) * sy
        body.append(f'<rect x="{_c(px)}" y="{_c(py)}" width="{_c(step * sx)}" '
                    f'height="{_c(step * sy)}" fill="rgb({r},{g},{bl})"/>')
    body.append(f'<text x="{W - RIGHT}" y="{TOP - 6}" text-anchor="end" font-family="sans-serif" '
                f'font-size="11">{escape(f"{label}: 1e{v_lo:.1f} .. 1e{v_hi:.1f}")}</text>')
    return _svg(body, title)
