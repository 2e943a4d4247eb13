"""Dependency-free SVG histogram of a bootstrap sample."""

from __future__ import annotations

import math
from pathlib import Path
from typing import Sequence
from xml.sax.saxutils import escape

import numpy as np

WIDTH, HEIGHT = 640, 420
LEFT, RIGHT, TOP, BOTTOM = 70, 20, 40, 60
ALPHA_COLOR = "orange"
CI_COLOR = "blue"


def sturges_bins(n: int) -> int:
    return math.ceil(math.log2(n) + 1)


def histogram_bins(sample: Sequence[float]) -> tuple[np.ndarray, np.ndarray]:
    """Counts and edges; a constant sample collapses to one bin."""
    x = np.asarray(sample, dtype=float)
    if x.size == 0:
        raise ValueError("cannot plot an empty sample")
    lo, hi = float(x.min()), float(x.max())
    if lo == hi:
        half = 0.05 if lo == 0 else abs(lo) * 0.05
        return np.array([x.size]), np.array([lo - half, hi + half])
    return np.histogram(x, bins=sturges_bins(x.size), range=(lo, hi))


def _ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    return [lo + (hi - lo) * k / (n - 1) for k in range(n)]


def histogram_svg(
    replicates: Sequence[float],
    alpha: float,
    ci: tuple[float, float],
    title: str = "Bootstrap distribution of alpha",
    xlabel: str = "Bootstrap Estimates",
) -> str:
    counts, edges = histogram_bins(replicates)
    x_lo = min(edges[0], alpha, *ci)
    x_hi = max(edges[-1], alpha, *ci)
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    y_hi = max(int(counts.max()), 1)
    pw, ph = WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM

    def sx(v):
        return LEFT + (v - x_lo) / (x_hi - x_lo) * pw

    def sy(c):
        return TOP + ph - c / y_hi * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.1f}" y="{TOP / 2 + 5:.1f}" text-anchor="middle" font-size="15">{escape(title)}</text>',
    ]
    for c, a, b in zip(counts.tolist(), edges[:-1].tolist(), edges[1:].tolist()):
        out.append(
            f'<rect class="bar" x="{sx(a):.3f}" y="{sy(c):.3f}" width="{sx(b) - sx(a):.3f}" '
            f'height="{sy(0) - sy(c):.3f}" fill="#d9d9d9" stroke="black" stroke-width="0.6" '
            f'data-count="{c}"/>'
        )
    # axes
    base = TOP + ph
    out.append(f'<line x1="{LEFT}" y1="{base}" x2="{LEFT + pw}" y2="{base}" stroke="black"/>')
    out.append(f'<line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{base}" stroke="black"/>')
    for v in _ticks(x_lo, x_hi):
        out.append(f'<line x1="{sx(v):.3f}" y1="{base}" x2="{sx(v):.3f}" y2="{base + 5}" stroke="black"/>')
        out.append(f'<text x="{sx(v):.3f}" y="{base + 18}" text-anchor="middle">{v:.3g}</text>')
    for c in _ticks(0, y_hi):
        out.append(f'<line x1="{LEFT - 5}" y1="{sy(c):.3f}" x2="{LEFT}" y2="{sy(c):.3f}" stroke="black"/>')
        out.append(f'<text x="{LEFT - 8}" y="{sy(c) + 4:.3f}" text-anchor="end">{c:.0f}</text>')
    out.append(f'<text x="{LEFT + pw / 2:.1f}" y="{HEIGHT - 15}" text-anchor="middle">{escape(xlabel)}</text>')
    out.append(
        f'<text x="18" y="{TOP + ph / 2:.1f}" text-anchor="middle" '
        f'transform="rotate(-90 18 {TOP + ph / 2:.1f})">Frequency</text>'
    )
    # markers: solid line at the estimate, dashed lines at the limits
    for cls, v, color, dash in (
        ("ci-line", ci[0], CI_COLOR, ' stroke-dasharray="6,4"'),
        ("ci-line", ci[1], CI_COLOR, ' stroke-dasharray="6,4"'),
        ("alpha-line", alpha, ALPHA_COLOR, ""),
    ):
        out.append(
            f'<line class="{cls}" x1="{sx(v):.3f}" y1="{TOP}" x2="{sx(v):.3f}" y2="{base}" '
            f'stroke="{color}" stroke-width="2"{dash} data-value="{v!r}"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_histogram(result, alpha: float, ci: tuple[float, float], path: str | Path, **kw) -> Path:
    """Write the histogram of ``result.replicates`` to ``path`` as SVG."""
    reps = getattr(result, "replicates", result)
    path = Path(path)
    path.write_text(histogram_svg(reps, alpha, ci, **kw), encoding="utf-8")
    return path
