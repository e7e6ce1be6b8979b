"""Minimal SVG plot writer: no plotting dependencies, diffable output."""

from __future__ import annotations

import math

WIDTH, HEIGHT = 640, 440
MARGIN = 60


def _map(v, lo, hi, out_lo, out_hi):
    if hi == lo:
        return 0.5 * (out_lo + out_hi)
    return out_lo + (v - lo) * (out_hi - out_lo) / (hi - lo)


def _axis_ticks(lo, hi, n=5):
    if hi == lo:
        return [lo]
    step = (hi - lo) / (n - 1)
    return [lo + i * step for i in range(n)]


def _frame(title, xlabel, ylabel, xlo, xhi, ylo, yhi):
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2}" y="24" text-anchor="middle" font-size="15">{title}</text>',
        f'<rect x="{MARGIN}" y="{MARGIN}" width="{WIDTH - 2 * MARGIN}" '
        f'height="{HEIGHT - 2 * MARGIN}" fill="none" stroke="black"/>',
        f'<text x="{WIDTH / 2}" y="{HEIGHT - 12}" text-anchor="middle" font-size="12">{xlabel}</text>',
        f'<text x="16" y="{HEIGHT / 2}" text-anchor="middle" font-size="12" '
        f'transform="rotate(-90 16 {HEIGHT / 2})">{ylabel}</text>',
    ]
    for tx in _axis_ticks(xlo, xhi):
        px = _map(tx, xlo, xhi, MARGIN, WIDTH - MARGIN)
        parts.append(
            f'<line x1="{px:.2f}" y1="{HEIGHT - MARGIN}" x2="{px:.2f}" '
            f'y2="{HEIGHT - MARGIN + 5}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{px:.2f}" y="{HEIGHT - MARGIN + 18}" text-anchor="middle" '
            f'font-size="10">{tx:.3g}</text>'
        )
    for ty in _axis_ticks(ylo, yhi):
        py = _map(ty, ylo, yhi, HEIGHT - MARGIN, MARGIN)
        parts.append(
            f'<line x1="{MARGIN - 5}" y1="{py:.2f}" x2="{MARGIN}" y2="{py:.2f}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{MARGIN - 8}" y="{py + 3:.2f}" text-anchor="end" '
            f'font-size="10">{ty:.3g}</text>'
        )
    return parts


def line_plot(path, xs, ys, title="", xlabel="", ylabel="", marker=True) -> None:
    xs, ys = list(xs), list(ys)
    if not xs:
        raise ValueError("nothing to plot")
    xlo, xhi = min(xs), max(xs)
    ylo, yhi = min(ys), max(ys)
    pad = 0.05 * (yhi - ylo) or 1.0
    ylo, yhi = ylo - pad, yhi + pad
    parts = _frame(title, xlabel, ylabel, xlo, xhi, ylo, yhi)
    pts = " ".join(
        f"{_map(x, xlo, xhi, MARGIN, WIDTH - MARGIN):.2f},"
        f"{_map(y, ylo, yhi, HEIGHT - MARGIN, MARGIN):.2f}"
        for x, y in zip(xs, ys)
    )
    parts.append(f'<polyline points="{pts}" fill="none" stroke="steelblue" stroke-width="1.5"/>')
    if marker:
        for x, y in zip(xs, ys):
            px = _map(x, xlo, xhi, MARGIN, WIDTH - MARGIN)
            py = _map(y, ylo, yhi, HEIGHT - MARGIN, MARGIN)
            parts.append(f'<circle cx="{px:.2f}" cy="{py:.2f}" r="2.5" fill="crimson"/>')
    parts.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(parts) + "\n")


def loglog_plot(path, deltas, counts, slope=None, intercept=None, title="", base=2.0) -> None:
    """log-log scatter of (delta, count) with an optional fitted line."""
    xs = [math.log(1.0 / d, base) for d in deltas]
    ys = [math.log(c, base) for c in counts]
    if not xs:
        raise ValueError("nothing to plot")
    xlo, xhi = min(xs), max(xs)
    ylo, yhi = min(ys), max(ys)
    pad = 0.05 * (yhi - ylo) or 1.0
    ylo, yhi = ylo - pad, yhi + pad
    label = f"{title} (slope {slope:.3f})" if slope is not None else title
    parts = _frame(label, f"log{base:g}(1/delta)", f"log{base:g}(count)", xlo, xhi, ylo, yhi)
    if slope is not None and intercept is not None:
        lb = math.log(base)
        y0 = (slope * xs[0] * lb + intercept) / lb
        y1 = (slope * xs[-1] * lb + intercept) / lb
        parts.append(
            f'<line x1="{_map(xs[0], xlo, xhi, MARGIN, WIDTH - MARGIN):.2f}" '
            f'y1="{_map(y0, ylo, yhi, HEIGHT - MARGIN, MARGIN):.2f}" '
            f'x2="{_map(xs[-1], xlo, xhi, MARGIN, WIDTH - MARGIN):.2f}" '
            f'y2="{_map(y1, ylo, yhi, HEIGHT - MARGIN, MARGIN):.2f}" '
            f'stroke="gray" stroke-dasharray="4 3"/>'
        )
    for x, y in zip(xs, ys):
        px = _map(x, xlo, xhi, MARGIN, WIDTH - MARGIN)
        py = _map(y, ylo, yhi, HEIGHT - MARGIN, MARGIN)
        parts.append(f'<circle cx="{px:.2f}" cy="{py:.2f}" r="3" fill="crimson"/>')
    parts.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(parts) + "\n")
