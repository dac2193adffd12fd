"""Lattice construction: power-law, square and logarithm maps, the edge
duality transform, and the naive comparison construction.

A lattice stores f[n][m] on the grid 0 <= n, m <= size.  Interior points
are filled by antidiagonal sweeps of the fourth-vertex solve; the two
boundary rays come from the nonautonomous constraint.  The lattice kinds:

  zc   power map with exponent 0 < c < 2, seeds f(0,0)=0, f(1,0)=1,
       f(0,1)=exp(i c pi/2)
  z2   square map (renormalized c=2 limit), seeds
       f(0,0)=f(1,0)=f(0,1)=0, f(2,0)=1, f(0,2)=-1, f(1,1)=2i/pi
  log  logarithm map (dual of z2), seeds f(0,0)=inf, f(1,0)=0,
       f(0,1)=i pi, f(1,1)=i pi/2, with its own constraint form
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Sequence

from . import _highprec
from .errors import SingularStep, ZeroEdge
from .numerics import (
    DEFAULT_TOL,
    INFINITY,
    ExtendedComplex,
    ToleranceConfig,
    as_extended,
)

__all__ = [
    "LatticeKind",
    "LatticeIndex",
    "ConformalLattice",
    "generate",
    "generate_naive",
    "boundary_extend",
    "dual_map",
    "constraint_residual",
]


class LatticeKind(str, Enum):
    ZC = "zc"
    Z2 = "z2"
    LOG = "log"


class LatticeIndex(NamedTuple):
    n: int
    m: int


def as_kind(kind) -> LatticeKind:
    if isinstance(kind, LatticeKind):
        return kind
    return LatticeKind(str(kind).lower())


@dataclass
class ConformalLattice:
    """Rectangular array of extended-complex values with its map kind and
    exponent.  Treat as immutable after construction."""

    kind: LatticeKind
    c: float
    size: int
    values: list  # values[n][m], ExtendedComplex

    def __post_init__(self):
        G = self.size
        if len(self.values) != G + 1 or any(len(r) != G + 1 for r in self.values):
            raise ValueError(f"values must be a ({G + 1})x({G + 1}) grid")

    def at(self, n: int, m: int) -> ExtendedComplex:
        if not (0 <= n <= self.size and 0 <= m <= self.size):
            raise IndexError(f"index ({n}, {m}) outside lattice of size {self.size}")
        return self.values[n][m]

    def value_at(self, n: int, m: int) -> complex:
        return self.at(n, m).value

    def is_finite(self, n: int, m: int) -> bool:
        return self.at(n, m).is_finite

    def complex_grid(self) -> list:
        """Plain complex grid with None at the infinite vertex."""
        return [[v.value if v.is_finite else None for v in row] for row in self.values]


def _wrap_grid(grid) -> list:
    return [
        [INFINITY if v is None else ExtendedComplex.from_complex(v) for v in row]
        for row in grid
    ]


def _effective_c(kind: LatticeKind, c) -> float:
    if kind is LatticeKind.ZC:
        if c is None:
            raise ValueError("kind 'zc' requires an exponent c")
        c = float(c)
        if not 0.0 < c < 2.0:
            raise ValueError(f"exponent must satisfy 0 < c < 2, got {c}")
        return c
    fixed = 2.0 if kind is LatticeKind.Z2 else 0.0
    if c is not None and float(c) != fixed:
        raise ValueError(f"kind '{kind.value}' has fixed exponent {fixed}")
    return fixed


def generate(kind, c, size: int, fill_order: str = "antidiagonal") -> ConformalLattice:
    """Generate a lattice of the given kind.

    fill_order is 'antidiagonal' (default) or 'rows'; both orders see the
    same data dependencies and exist to make the compatibility of the
    interior fill testable.
    """
    kind = as_kind(kind)
    c = _effective_c(kind, c)
    if size < 2:
        raise ValueError("size must be at least 2")
    if fill_order not in ("antidiagonal", "rows"):
        raise ValueError(f"unknown fill order {fill_order!r}")
    grid = _highprec.lattice_grid(kind.value, c, size, fill_order)
    return ConformalLattice(kind=kind, c=c, size=size, values=_wrap_grid(grid))


def generate_naive(c: float, size: int) -> ConformalLattice:
    """Equidistant axes filled by cross-ratio solves with no constraint.

    The result is a genuine cross-ratio lattice but not an immersion for
    c != 1; it serves as the negative fixture for the geometry checks.
    """
    c = float(c)
    if not 0.0 < c < 2.0:
        raise ValueError(f"exponent must satisfy 0 < c < 2, got {c}")
    if size < 2:
        raise ValueError("size must be at least 2")
    grid = _highprec.naive_grid(c, size)
    return ConformalLattice(kind=LatticeKind.ZC, c=c, size=size, values=_wrap_grid(grid))


def boundary_extend(kind, c, axis_values: Sequence, tol: ToleranceConfig = DEFAULT_TOL) -> ExtendedComplex:
    """Next boundary value from the constraint restricted to one axis.

    For kinds zc/z2 the m=0 specialization is linear in the unknown:
    c*f_k*(f_{k+1} - f_{k-1}) = 2k*(f_{k+1} - f_k)*(f_k - f_{k-1}).
    The log constraint replaces the left side with f_{k+1} - f_{k-1} and
    halves the weight, and tolerates the infinite corner value.
    """
    kind = as_kind(kind)
    vals = [as_extended(v) for v in axis_values]
    if len(vals) < 2:
        raise ValueError("need at least two previous axis values")
    k = len(vals) - 1
    P, Q = vals[k], vals[k - 1]

    if kind is LatticeKind.LOG:
        if not P.is_finite:
            raise ValueError("log axis value before the unknown must be finite")
        if not Q.is_finite:
            return ExtendedComplex.from_complex(P.value + 1.0)
        p, q = P.value, Q.value
        num = q - k * p * (p - q)
        den = 1.0 - k * (p - q)
    else:
        if not (P.is_finite and Q.is_finite):
            raise ValueError("axis values must be finite for this kind")
        ceff = 2.0 if kind is LatticeKind.Z2 else float(c)
        p, q = P.value, Q.value
        num = ceff * p * q - 2 * k * p * (p - q)
        den = ceff * p - 2 * k * (p - q)

    scale = max(1.0, abs(p), abs(q)) * max(1.0, 2 * k)
    if abs(den) <= tol.degenerate_tol * scale:
        raise SingularStep(f"vanishing linear coefficient at axis index {k}", index=k)
    return ExtendedComplex.from_complex(num / den)


def dual_map(lat: ConformalLattice, anchor=0.0,
             anchor_index: LatticeIndex = LatticeIndex(0, 0),
             tol: ToleranceConfig = DEFAULT_TOL) -> ConformalLattice:
    """Edge-reciprocal dual lattice.

    Dual edges are +1/edge in the n direction and -1/edge in the m
    direction, integrated from the anchor vertex; the anchor fixes the
    additive constant.  With this orientation (the reflection of the
    opposite sign split, which differs only by a rigid motion) the dual
    of the square map anchored at f*(1,0)=0 IS the logarithm map, and
    the dual of a power map anchored at f*(0,0)=0 is the power map with
    the complementary exponent 2-c.

    A vertex all of whose incident source edges are degenerate (the z2
    triple corner) maps to the point at infinity; edges incident to an
    infinite source vertex contribute increment 0.
    """
    G = lat.size
    grid = lat.complex_grid()
    anchor = as_extended(anchor)
    ai, aj = anchor_index
    if not (0 <= ai <= G and 0 <= aj <= G):
        raise IndexError(f"anchor index {anchor_index} outside lattice")
    if not anchor.is_finite:
        raise ValueError("anchor value must be finite")

    scale = max(1.0, max(abs(v) for row in grid for v in row if v is not None))
    edge_floor = tol.degenerate_tol * scale

    def increment(n0, m0, n1, m1):
        """Dual increment for the step (n0,m0) -> (n1,m1); None when the
        source edge is degenerate (dual edge infinite)."""
        a, b = grid[n0][m0], grid[n1][m1]
        if a is None or b is None:
            return 0j
        diff = b - a
        if abs(diff) <= edge_floor:
            return None
        return 1.0 / diff if m0 == m1 else -1.0 / diff

    dual = [[None] * (G + 1) for _ in range(G + 1)]
    dual[ai][aj] = anchor.value
    queue = deque([(ai, aj)])
    while queue:
        n, m = queue.popleft()
        for dn, dm in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            nn, mm = n + dn, m + dm
            if not (0 <= nn <= G and 0 <= mm <= G) or dual[nn][mm] is not None:
                continue
            if dn + dm > 0:
                inc = increment(n, m, nn, mm)
            else:
                inc = increment(nn, mm, n, m)
                inc = None if inc is None else -inc
            if inc is None:
                continue
            dual[nn][mm] = dual[n][m] + inc
            queue.append((nn, mm))

    values = [[None] * (G + 1) for _ in range(G + 1)]
    worst_defect = 0.0
    for n in range(G + 1):
        for m in range(G + 1):
            if dual[n][m] is not None:
                values[n][m] = ExtendedComplex.from_complex(dual[n][m])
                continue
            # unreached: legitimate only if isolated by degenerate edges
            for dn, dm in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                nn, mm = n + dn, m + dm
                if not (0 <= nn <= G and 0 <= mm <= G):
                    continue
                a, b = grid[n][m], grid[nn][mm]
                if a is None or b is None:
                    continue
                if abs(b - a) > edge_floor:
                    raise ZeroEdge(
                        f"vertex ({n}, {m}) unreachable but has a nonzero edge",
                        index=LatticeIndex(n, m),
                    )
            values[n][m] = INFINITY

    # path independence: every remaining edge must be consistent
    for n in range(G + 1):
        for m in range(G + 1):
            if dual[n][m] is None:
                continue
            for dn, dm in ((1, 0), (0, 1)):
                nn, mm = n + dn, m + dm
                if nn > G or mm > G or dual[nn][mm] is None:
                    continue
                inc = increment(n, m, nn, mm)
                if inc is None:
                    continue
                defect = abs(dual[nn][mm] - dual[n][m] - inc)
                local = max(1.0, abs(dual[n][m]), abs(inc))
                worst_defect = max(worst_defect, defect / local)
    if worst_defect > tol.rel_tol:
        raise ValueError(
            f"dual edge sums are path dependent (defect {worst_defect:.3e}); "
            "the input is not a consistent cross-ratio lattice"
        )

    kind_map = {LatticeKind.ZC: LatticeKind.ZC, LatticeKind.Z2: LatticeKind.LOG,
                LatticeKind.LOG: LatticeKind.Z2}
    new_kind = kind_map[lat.kind]
    return ConformalLattice(kind=new_kind, c=2.0 - lat.c, size=G, values=values)


def constraint_residual(lat: ConformalLattice, at: LatticeIndex) -> float:
    """Normalized defect of the regularized constraint at an interior index.

    The regularized form multiplies through by both difference
    denominators; the defect is scaled by the largest of the three terms,
    so tolerances are scale free.
    """
    n, m = at
    G = lat.size
    if not (1 <= n <= G - 1 and 1 <= m <= G - 1):
        raise ValueError(f"constraint stencil needs an interior index, got ({n}, {m})")
    g = lat.complex_grid()
    stencil = (g[n][m], g[n + 1][m], g[n - 1][m], g[n][m + 1], g[n][m - 1])
    if any(v is None for v in stencil):
        raise ValueError(f"constraint stencil at ({n}, {m}) touches the infinite vertex")
    f0, fr, fl, fu, fd = stencil
    dn = fr - fl
    dm = fu - fd
    tn = (fr - f0) * (f0 - fl) * dm
    tm = (fu - f0) * (f0 - fd) * dn
    if lat.kind is LatticeKind.LOG:
        t0 = dn * dm
        t1 = n * tn
        t2 = m * tm
    else:
        ceff = 2.0 if lat.kind is LatticeKind.Z2 else lat.c
        t0 = ceff * f0 * dn * dm
        t1 = 2 * n * tn
        t2 = 2 * m * tm
    norm = max(abs(t0), abs(t1), abs(t2))
    if norm == 0.0:
        return 0.0
    return abs(t0 - t1 - t2) / norm
