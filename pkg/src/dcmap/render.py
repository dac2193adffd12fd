"""SVG rendering of lattices and their circle patterns.

The y axis is flipped so the upper half plane renders upward.  Circles
are drawn at even vertices with the radius read from the incident edges
(no consistency gate, so non-Schramm lattices still render); the line
circle of the logarithm map is drawn as a segment clipped to the
viewport.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .lattice import ConformalLattice

__all__ = ["RenderOptions", "render_svg"]

_SCHEMES = {
    "default": {"circle": "#2266aa", "quad": "#333333", "line": "#aa3322"},
    "print": {"circle": "#000000", "quad": "#666666", "line": "#000000"},
}


@dataclass(frozen=True)
class RenderOptions:
    stroke_width: float = 1.0  # in output pixels
    padding: float = 0.05  # fraction of the larger bbox dimension
    draw_circles: bool = True
    draw_quads: bool = True
    scheme: str = "default"

    def __post_init__(self):
        if self.stroke_width <= 0 or self.padding <= 0:
            raise ValueError("stroke width and padding must be positive")
        if self.scheme not in _SCHEMES:
            raise ValueError(f"unknown color scheme {self.scheme!r}")


def _edge_radius(grid, n, m, G) -> float | None:
    """Radius at an even vertex from its first in-range finite edge,
    preferring the +n edge."""
    center = grid[n][m]
    if center is None:
        return math.inf
    for dn, dm in ((1, 0), (0, 1), (-1, 0), (0, -1)):
        nn, mm = n + dn, m + dm
        if 0 <= nn <= G and 0 <= mm <= G and grid[nn][mm] is not None:
            return abs(grid[nn][mm] - center)
    return None


def _clip_line(p: complex, d: complex, x0, y0, x1, y1):
    """Liang-Barsky clip of the infinite line p + t*d to a box; returns
    endpoint pair or None when the line misses the box."""
    t0, t1 = -math.inf, math.inf
    for num, den in (
        (x0 - p.real, d.real), (p.real - x1, -d.real),
        (y0 - p.imag, d.imag), (p.imag - y1, -d.imag),
    ):
        if den == 0.0:
            if num > 0:
                return None
            continue
        t = num / den
        if den > 0:
            t0 = max(t0, t)
        else:
            t1 = min(t1, t)
    if t0 > t1:
        return None
    return p + t0 * d, p + t1 * d


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def render_svg(lat: ConformalLattice, options: RenderOptions = RenderOptions()) -> str:
    G = lat.size
    grid = lat.complex_grid()
    colors = _SCHEMES[options.scheme]

    finite = [v for row in grid for v in row if v is not None]
    if not finite:
        raise ValueError("lattice has no finite vertices to render")
    xs = [v.real for v in finite]
    ys = [v.imag for v in finite]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    dim = max(x1 - x0, y1 - y0, 1e-9)
    pad = options.padding * dim
    x0, x1, y0, y1 = x0 - pad, x1 + pad, y0 - pad, y1 + pad
    stroke = options.stroke_width * max(x1 - x0, y1 - y0) / 800.0

    def pt(v: complex) -> str:
        return f"{_fmt(v.real)} {_fmt(-v.imag)}"

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{_fmt(x0)} {_fmt(-y1)} '
        f'{_fmt(x1 - x0)} {_fmt(y1 - y0)}" width="800" height="{_fmt(800 * (y1 - y0) / (x1 - x0))}">'
    ]

    if options.draw_quads:
        parts.append(f'<g fill="none" stroke="{colors["quad"]}" stroke-width="{_fmt(stroke)}">')
        for n in range(G + 1):
            for m in range(G + 1):
                a = grid[n][m]
                if a is None:
                    continue
                for dn, dm in ((1, 0), (0, 1)):
                    nn, mm = n + dn, m + dm
                    if nn <= G and mm <= G and grid[nn][mm] is not None:
                        b = grid[nn][mm]
                        parts.append(f'<path d="M {pt(a)} L {pt(b)}"/>')
        parts.append("</g>")

    if options.draw_circles:
        parts.append(
            f'<g fill="none" stroke="{colors["circle"]}" stroke-width="{_fmt(stroke)}">'
        )
        for n in range(G + 1):
            for m in range(G + 1):
                if (n + m) % 2:
                    continue
                r = _edge_radius(grid, n, m, G)
                if r is None or r == 0.0:
                    continue
                if math.isinf(r):
                    # line circle: through the two axis neighbors of the
                    # infinite vertex, clipped to the viewport
                    through = []
                    for dn, dm in ((1, 0), (0, 1), (-1, 0), (0, -1)):
                        nn, mm = n + dn, m + dm
                        if 0 <= nn <= G and 0 <= mm <= G and grid[nn][mm] is not None:
                            through.append(grid[nn][mm])
                    if len(through) >= 2:
                        seg = _clip_line(through[0], through[1] - through[0],
                                         x0, y0, x1, y1)
                        if seg is not None:
                            a, b = seg
                            parts.append(
                                f'<line stroke="{colors["line"]}" x1="{_fmt(a.real)}" '
                                f'y1="{_fmt(-a.imag)}" x2="{_fmt(b.real)}" y2="{_fmt(-b.imag)}"/>'
                            )
                    continue
                center = grid[n][m]
                parts.append(
                    f'<circle cx="{_fmt(center.real)}" cy="{_fmt(-center.imag)}" r="{_fmt(r)}"/>'
                )
        parts.append("</g>")

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
