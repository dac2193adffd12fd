"""Radius field on the even sublattice, its governing equations, the
edge-ratio variables, and radius duality.

Even vertices n+m = 0 (mod 2) carry complex labels z = N + iM with
N = (n-m)/2, M = (n+m)/2; the quadrant n, m >= 0 maps to M >= |N|.
R(z) is the common length of the four edges at the center vertex, i.e.
the radius of the circle through its neighbors.  The logarithm's corner
circle is a straight line, stored as an infinite radius and excluded
from residual stencils; the square map's corner carries radius 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dataclass_field
from typing import NamedTuple

from .errors import EquiViolation, MissingNeighbor
from .lattice import ConformalLattice, LatticeIndex
from .numerics import DEFAULT_TOL, ToleranceConfig

__all__ = [
    "SublatticeLabel",
    "RadiusField",
    "EdgeRatioField",
    "extract_radii",
    "radius_residuals",
    "sign_condition",
    "xy_from_radii",
    "xy_residuals",
    "dual_radii",
]

_TINY = 1e-300


class SublatticeLabel(NamedTuple):
    N: int
    M: int

    def to_index(self) -> LatticeIndex:
        return LatticeIndex(self.N + self.M, self.M - self.N)

    @classmethod
    def from_index(cls, n: int, m: int) -> "SublatticeLabel":
        if (n + m) % 2:
            raise ValueError(f"({n}, {m}) is not an even vertex")
        return cls((n - m) // 2, (n + m) // 2)


@dataclass
class RadiusField:
    """Radii keyed by sublattice label; math.inf marks a line circle."""

    c: float
    values: dict = dataclass_field(default_factory=dict)

    def get(self, label) -> float | None:
        return self.values.get(label)

    def labels(self):
        return self.values.keys()

    def finite_labels(self):
        return (z for z, r in self.values.items() if math.isfinite(r))

    def interior_labels(self):
        """Labels with the full five-point stencil present and finite."""
        for (N, M) in self.values:
            stencil = [(N, M), (N + 1, M), (N, M + 1), (N - 1, M), (N, M - 1)]
            rs = [self.values.get(z) for z in stencil]
            if all(r is not None and math.isfinite(r) for r in rs):
                yield SublatticeLabel(N, M)


@dataclass
class EdgeRatioField:
    """Edge-ratio variables in (-1, 1) derived from radius ratios."""

    c: float
    x: dict = dataclass_field(default_factory=dict)
    y: dict = dataclass_field(default_factory=dict)


def extract_radii(lat: ConformalLattice, tol: ToleranceConfig = DEFAULT_TOL) -> RadiusField:
    """Read the radius field off a lattice, verifying that the edge
    lengths at every even vertex agree within rel_tol."""
    G = lat.size
    grid = lat.complex_grid()
    values: dict = {}
    for n in range(G + 1):
        for m in range(G + 1):
            if (n + m) % 2:
                continue
            label = SublatticeLabel.from_index(n, m)
            center = grid[n][m]
            if center is None:
                values[label] = math.inf
                continue
            lengths = []
            first = None
            for dn, dm in ((1, 0), (0, 1), (-1, 0), (0, -1)):
                nn, mm = n + dn, m + dm
                if 0 <= nn <= G and 0 <= mm <= G:
                    e = abs(grid[nn][mm] - center)
                    lengths.append(e)
                    if first is None:
                        first = e
            if not lengths:
                continue
            spread = max(lengths) - min(lengths)
            if spread > tol.rel_tol * max(max(lengths), 1.0):
                raise EquiViolation(
                    f"edge lengths at vertex ({n}, {m}) disagree by {spread:.3e}",
                    index=LatticeIndex(n, m),
                    spread=spread,
                )
            values[label] = first
    return RadiusField(c=lat.c, values=values)


def _stencil(fld: RadiusField, z, offsets):
    out = []
    for dN, dM in offsets:
        label = SublatticeLabel(z[0] + dN, z[1] + dM)
        r = fld.values.get(label)
        if r is None or not math.isfinite(r):
            raise MissingNeighbor(
                f"label {label} absent or non-finite in radius field", label=label
            )
        out.append(r)
    return out


def radius_residuals(fld: RadiusField, z) -> tuple:
    """Normalized defects of the five radius equations at z, in the order
    (center, square, right, left, up).  Each defect is scaled by the
    largest term magnitude in its equation."""
    N, M = z
    r0, rp1, rpi, rm1, rmi = _stencil(fld, z, ((0, 0), (1, 0), (0, 1), (-1, 0), (0, -1)))
    (rp1i,) = _stencil(fld, z, ((1, 1),))

    # center equation: R^2 * sum(neighbors) = sum of neighbor triple products
    nbrs = [rp1, rpi, rm1, rmi]
    total = sum(nbrs)
    triples = sum(
        math.prod(nbrs[j] for j in range(4) if j != i) for i in range(4)
    )
    t_left, t_right = r0 * r0 * total, triples
    res_center = abs(t_left - t_right) / max(t_left, t_right, _TINY)

    terms = (
        r0 * rp1 * (-2 * M - fld.c),
        rp1 * rp1i * (2 * (N + 1) - fld.c),
        rp1i * rpi * (2 * (M + 1) - fld.c),
        rpi * r0 * (-2 * N - fld.c),
    )
    res_square = abs(sum(terms)) / max(max(abs(t) for t in terms), _TINY)

    a = (N + M) * (r0 * r0 - rp1 * rmi) * (rpi + rp1)
    b = (M - N) * (r0 * r0 - rpi * rp1) * (rp1 + rmi)
    res_right = abs(a + b) / max(abs(a), abs(b), _TINY)

    a = (N + M) * (r0 * r0 - rpi * rm1) * (rm1 + rmi)
    b = (M - N) * (r0 * r0 - rm1 * rmi) * (rpi + rm1)
    res_left = abs(a + b) / max(abs(a), abs(b), _TINY)

    a = (N + M) * (r0 * r0 - rpi * rm1) * (rp1 + rpi)
    b = (N - M) * (r0 * r0 - rp1 * rpi) * (rpi + rm1)
    res_up = abs(a + b) / max(abs(a), abs(b), _TINY)

    return res_center, res_square, res_right, res_left, res_up


def sign_condition(fld: RadiusField, z, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Embeddedness sign test: (c-1)(R(z)^2 - R(z-i)R(z+1)) >= -abs_tol."""
    r0, rmi, rp1 = _stencil(fld, z, ((0, 0), (0, -1), (1, 0)))
    return (fld.c - 1.0) * (r0 * r0 - rmi * rp1) >= -tol.abs_tol


def xy_from_radii(fld: RadiusField) -> EdgeRatioField:
    """Edge-ratio variables: (1+X)/(1-X) = R(z+1)/R(z) and
    (1+Y)/(1-Y) = R(z)/R(z-i), defined where both radii are finite and
    positive."""
    x: dict = {}
    y: dict = {}
    for (N, M), r in fld.values.items():
        if not (0.0 < r < math.inf):
            continue
        right = fld.values.get(SublatticeLabel(N + 1, M))
        if right is not None and 0.0 < right < math.inf:
            rho = right / r
            x[SublatticeLabel(N, M)] = (rho - 1.0) / (rho + 1.0)
        below = fld.values.get(SublatticeLabel(N, M - 1))
        if below is not None and 0.0 < below < math.inf:
            sigma = r / below
            y[SublatticeLabel(N, M)] = (sigma - 1.0) / (sigma + 1.0)
    return EdgeRatioField(c=fld.c, x=x, y=y)


def _xy_get(table: dict, N: int, M: int, what: str) -> float:
    v = table.get(SublatticeLabel(N, M))
    if v is None:
        raise MissingNeighbor(f"{what} missing at label ({N}, {M})",
                              label=SublatticeLabel(N, M))
    return v


def xy_residuals(xy: EdgeRatioField, z) -> tuple:
    """Normalized defects of the four edge-ratio equations at z, in the
    order (right, square, center, compatibility)."""
    N, M = z
    c = xy.c
    x = _xy_get(xy.x, N, M, "X")
    y = _xy_get(xy.y, N, M, "Y")
    ybar = _xy_get(xy.y, N, M + 1, "Y")
    xbar = _xy_get(xy.x, N, M + 1, "X")
    xleft = _xy_get(xy.x, N - 1, M, "X")
    ydiag = _xy_get(xy.y, N + 1, M + 1, "Y")

    t1 = (M - N) * (x + ybar) / (1.0 - x * ybar)
    t2 = (M + N) * (x - y) / (1.0 + x * y)
    res_right = abs(t1 + t2) / max(abs(t1), abs(t2), _TINY)

    t1 = (M - N) * (ybar - x) / (1.0 - x * ybar)
    t2 = (M + N + 1) * (xbar + ybar) / (1.0 + xbar * ybar)
    res_square = abs(t1 + t2 - (c - 1.0)) / max(abs(t1), abs(t2), abs(c - 1.0), _TINY)

    lhs = (x + ybar) / (1.0 - x * ybar)
    rhs = (xleft + y) / (1.0 - xleft * y)
    res_center = abs(lhs - rhs) / max(abs(lhs), abs(rhs), _TINY)

    lhs = (x + ydiag) / (1.0 + x * ydiag)
    rhs = (xbar + ybar) / (1.0 + xbar * ybar)
    res_compat = abs(lhs - rhs) / max(abs(lhs), abs(rhs), _TINY)

    return res_right, res_square, res_center, res_compat


def dual_radii(fld: RadiusField) -> RadiusField:
    """Pointwise reciprocal field; the exponent maps c -> 2-c.  Radius 0
    and the line marker swap places."""
    values = {}
    for z, r in fld.values.items():
        if r == 0.0:
            values[z] = math.inf
        elif math.isinf(r):
            values[z] = 0.0
        else:
            values[z] = 1.0 / r
    return RadiusField(c=2.0 - fld.c, values=values)
