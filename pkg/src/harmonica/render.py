"""SVG rendering: chord diagrams of matchings/bimatchings on a circle, and
zero-set plots of Im(e^{-i theta} f) over a square window with the trace
circle superimposed.  Output is deterministic for fixed input and spec."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .combinatorics import Basketball, Bimatching, Matching
from .curves import reduce_angle, safe_radius
from .errors import InvalidInput
from .polynomials import MonicPolynomial


@dataclass(frozen=True)
class RenderSpec:
    kind: str = "chord_diagram"
    size: int = 600
    even_color: str = "#1f77b4"
    odd_color: str = "#d62728"
    grid: int = 256

    def __post_init__(self) -> None:
        if self.kind not in ("chord_diagram", "curve_plot"):
            raise InvalidInput(f"unknown render kind {self.kind!r}")
        if self.size <= 0:
            raise InvalidInput("size must be positive")
        if self.grid < 64:
            raise InvalidInput("grid resolution must be >= 64")


def _fmt(x: float) -> str:
    return f"{x:.3f}"


def _chord_path(x1, y1, x2, y2, cx, cy) -> str:
    # Quadratic curve bowed toward the center reads better than a straight chord.
    mx = 0.5 * (x1 + x2)
    my = 0.5 * (y1 + y2)
    qx = 0.55 * mx + 0.45 * cx
    qy = 0.55 * my + 0.45 * cy
    return (
        f'<path d="M {_fmt(x1)} {_fmt(y1)} Q {_fmt(qx)} {_fmt(qy)} '
        f'{_fmt(x2)} {_fmt(y2)}" fill="none"'
    )


def chord_diagram_svg(obj, spec: RenderSpec | None = None) -> str:
    """Chord diagram of a Matching, Bimatching or Basketball: labeled points on
    a circle, even/odd chords distinguished by color."""
    spec = spec or RenderSpec()
    if isinstance(obj, Basketball):
        obj = obj.bimatching
    if isinstance(obj, Bimatching):
        groups = [(obj.even, spec.even_color), (obj.odd, spec.odd_color)]
        total = 4 * obj.order
    elif isinstance(obj, Matching):
        groups = [(obj.pairs, spec.even_color)]
        total = obj.ground_size
    else:
        raise InvalidInput(f"cannot render {type(obj).__name__}")

    s = spec.size
    c = s / 2.0
    radius = 0.42 * s
    label_radius = 0.47 * s

    def position(k: int) -> tuple[float, float]:
        # Counterclockwise from the positive x axis; SVG's y axis points down.
        ang = 2.0 * math.pi * k / total
        return c + radius * math.cos(ang), c - radius * math.sin(ang)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{s}" height="{s}" '
        f'viewBox="0 0 {s} {s}">',
        f'<rect width="{s}" height="{s}" fill="white"/>',
        f'<circle cx="{_fmt(c)}" cy="{_fmt(c)}" r="{_fmt(radius)}" '
        f'fill="none" stroke="#bbbbbb" stroke-width="1"/>',
    ]
    for pairs, color in groups:
        for a, b in pairs:
            x1, y1 = position(a)
            x2, y2 = position(b)
            parts.append(
                _chord_path(x1, y1, x2, y2, c, c)
                + f' stroke="{color}" stroke-width="2"/>'
            )
    for k in range(total):
        x, y = position(k)
        parts.append(
            f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="3" fill="#222222"/>'
        )
        ang = 2.0 * math.pi * k / total
        lx = c + label_radius * math.cos(ang)
        ly = c - label_radius * math.sin(ang)
        parts.append(
            f'<text x="{_fmt(lx)}" y="{_fmt(ly)}" font-size="{max(10, s // 50)}" '
            f'text-anchor="middle" dominant-baseline="middle">{k}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts)


def _segments(values: np.ndarray, xs: np.ndarray, ys: np.ndarray):
    """Zero-level segments of a sampled field, one straight segment per cell
    edge pair (marching squares without connectivity)."""
    segs = []
    nrow, ncol = values.shape
    for i in range(nrow - 1):
        for j in range(ncol - 1):
            corners = (
                (values[i, j], xs[j], ys[i]),
                (values[i, j + 1], xs[j + 1], ys[i]),
                (values[i + 1, j + 1], xs[j + 1], ys[i + 1]),
                (values[i + 1, j], xs[j], ys[i + 1]),
            )
            pts = []
            for k in range(4):
                v0, x0, y0 = corners[k]
                v1, x1, y1 = corners[(k + 1) % 4]
                if (v0 > 0) != (v1 > 0):
                    t = v0 / (v0 - v1)
                    pts.append((x0 + t * (x1 - x0), y0 + t * (y1 - y0)))
            if len(pts) == 2:
                segs.append((pts[0], pts[1]))
            elif len(pts) == 4:
                # Saddle cell: join crossings pairwise in edge order.
                segs.append((pts[0], pts[1]))
                segs.append((pts[2], pts[3]))
    return segs


def curve_plot_svg(
    f: MonicPolynomial,
    thetas: list[float],
    spec: RenderSpec | None = None,
    radius: float | None = None,
    color: str | None = None,
) -> str:
    """Multi-panel plot of the zero sets of Im(e^{-i theta} f) over the square
    window containing the trace circle, one panel per angle."""
    spec = spec or RenderSpec(kind="curve_plot")
    if not thetas:
        raise InvalidInput("need at least one angle")
    if radius is None:
        radius = max(
            safe_radius(f, reduce_angle(t)).radius for t in thetas
        )
    stroke = color or spec.even_color
    panel = spec.size
    pad = 0.05 * radius
    window = radius + pad
    width = panel * len(thetas)
    xs = np.linspace(-window, window, spec.grid)
    ys = np.linspace(-window, window, spec.grid)
    grid_x, grid_y = np.meshgrid(xs, ys)
    zs = grid_x + 1j * grid_y

    def to_px(x: float, y: float, panel_index: int) -> tuple[float, float]:
        px = (x + window) / (2 * window) * panel + panel_index * panel
        py = (window - y) / (2 * window) * panel
        return px, py

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{panel}" viewBox="0 0 {width} {panel}">',
        f'<rect width="{width}" height="{panel}" fill="white"/>',
    ]
    for idx, theta in enumerate(thetas):
        theta = reduce_angle(theta)
        values = np.imag(np.exp(-1j * theta) * f(zs))
        cx, cy = to_px(0.0, 0.0, idx)
        rpx = radius / (2 * window) * panel
        parts.append(
            f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(rpx)}" '
            f'fill="none" stroke="#999999" stroke-width="1"/>'
        )
        for (x1, y1), (x2, y2) in _segments(values, xs, ys):
            px1, py1 = to_px(x1, y1, idx)
            px2, py2 = to_px(x2, y2, idx)
            parts.append(
                f'<line x1="{_fmt(px1)}" y1="{_fmt(py1)}" x2="{_fmt(px2)}" '
                f'y2="{_fmt(py2)}" stroke="{stroke}" stroke-width="1.5"/>'
            )
        if idx:
            parts.append(
                f'<line x1="{idx * panel}" y1="0" x2="{idx * panel}" '
                f'y2="{panel}" stroke="#dddddd" stroke-width="1"/>'
            )
    parts.append("</svg>")
    return "\n".join(parts)
