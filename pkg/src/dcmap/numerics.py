"""Extended complex arithmetic, the cross-ratio, and the fourth-vertex solve.

The extended plane has a single point at infinity.  Cross-ratios with one
infinite argument are evaluated by cancelling the two factors that contain
the infinite point, which is the Moebius-consistent limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateQuad

__all__ = [
    "ExtendedComplex",
    "INFINITY",
    "ToleranceConfig",
    "DEFAULT_TOL",
    "as_extended",
    "cross_ratio",
    "solve_fourth",
]


@dataclass(frozen=True)
class ExtendedComplex:
    """A point of the extended complex plane.

    All infinite values compare equal; re/im of an infinite value are
    normalized to 0 so dataclass equality does the right thing.
    """

    re: float
    im: float = 0.0
    at_infinity: bool = False

    def __post_init__(self):
        if self.at_infinity:
            object.__setattr__(self, "re", 0.0)
            object.__setattr__(self, "im", 0.0)
        else:
            if not (math.isfinite(self.re) and math.isfinite(self.im)):
                raise ValueError(
                    f"finite value with non-finite coordinates ({self.re}, {self.im})"
                )

    @classmethod
    def from_complex(cls, z: complex) -> "ExtendedComplex":
        return cls(float(z.real), float(z.imag))

    @classmethod
    def infinity(cls) -> "ExtendedComplex":
        return cls(0.0, 0.0, at_infinity=True)

    @property
    def value(self) -> complex:
        if self.at_infinity:
            raise ValueError("point at infinity has no finite value")
        return complex(self.re, self.im)

    @property
    def is_finite(self) -> bool:
        return not self.at_infinity

    def __complex__(self) -> complex:
        return self.value

    def isclose(self, other: "ExtendedComplex", rel_tol: float = 1e-9,
                abs_tol: float = 0.0) -> bool:
        if self.at_infinity or other.at_infinity:
            return self.at_infinity and other.at_infinity
        return math.isclose(self.re, other.re, rel_tol=rel_tol, abs_tol=abs_tol) and \
            math.isclose(self.im, other.im, rel_tol=rel_tol, abs_tol=abs_tol)

    def __repr__(self) -> str:
        if self.at_infinity:
            return "ExtendedComplex(inf)"
        return f"ExtendedComplex({self.re!r}, {self.im!r})"


INFINITY = ExtendedComplex.infinity()


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical tolerances used throughout the package."""

    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    degenerate_tol: float = 1e-12

    def __post_init__(self):
        if self.rel_tol <= 0 or self.abs_tol <= 0 or self.degenerate_tol <= 0:
            raise ValueError("all tolerances must be strictly positive")


DEFAULT_TOL = ToleranceConfig()


def as_extended(z) -> ExtendedComplex:
    """Coerce complex / float / ExtendedComplex to ExtendedComplex."""
    if isinstance(z, ExtendedComplex):
        return z
    if isinstance(z, (int, float)):
        return ExtendedComplex(float(z), 0.0)
    if isinstance(z, complex):
        return ExtendedComplex.from_complex(z)
    raise TypeError(f"cannot interpret {z!r} as an extended complex number")


def _scale(*vals: complex) -> float:
    return max(1.0, *(abs(v) for v in vals))


def cross_ratio(a, b, c, d, tol: ToleranceConfig = DEFAULT_TOL) -> ExtendedComplex:
    """Cross-ratio (a-b)(c-d) / ((b-c)(d-a)), -1 on a conformal square.

    At most one argument may be infinite; the two factors containing the
    infinite point cancel to -1 in the limit.
    """
    pts = [as_extended(a), as_extended(b), as_extended(c), as_extended(d)]
    inf_at = [i for i, p in enumerate(pts) if p.at_infinity]
    if len(inf_at) > 1:
        raise DegenerateQuad("more than one vertex at infinity")

    if inf_at:
        # each vertex sits in exactly one numerator and one denominator
        # factor; their ratio tends to -1 as the vertex goes to infinity
        i = inf_at[0]
        fa, fb, fc, fd = (p.value if p.is_finite else None for p in pts)
        if i == 0:
            num, den = fd - fc, fb - fc
        elif i == 1:
            num, den = fd - fc, fd - fa
        elif i == 2:
            num, den = fa - fb, fd - fa
        else:
            num, den = fa - fb, fb - fc
        if abs(den) <= tol.degenerate_tol * _scale(*(v for v in (fa, fb, fc, fd) if v is not None)):
            if abs(num) <= tol.degenerate_tol * _scale(*(v for v in (fa, fb, fc, fd) if v is not None)):
                raise DegenerateQuad("cross-ratio 0/0 after infinity cancellation")
            return INFINITY
        return ExtendedComplex.from_complex(num / den)

    fa, fb, fc, fd = (p.value for p in pts)
    s = _scale(fa, fb, fc, fd)
    num = (fa - fb) * (fc - fd)
    den = (fb - fc) * (fd - fa)
    if abs(fb - fc) <= tol.degenerate_tol * s or abs(fd - fa) <= tol.degenerate_tol * s:
        raise DegenerateQuad("cross-ratio denominator degenerates")
    return ExtendedComplex.from_complex(num / den)


def solve_fourth(a, b, c, tol: ToleranceConfig = DEFAULT_TOL) -> ExtendedComplex:
    """The unique d with cross_ratio(a, b, c, d) = -1.

    Rearranging the cross-ratio equation gives the Moebius solve
    d = (ab - 2ac + bc) / (2b - a - c).  When the denominator vanishes
    (b the midpoint of a and c) the solution is the point at infinity.
    """
    pa, pb, pc = as_extended(a), as_extended(b), as_extended(c)
    inf_count = sum(p.at_infinity for p in (pa, pb, pc))
    if inf_count > 1:
        raise DegenerateQuad("more than one vertex at infinity")

    if inf_count == 1:
        # limit forms of the defining equation with one infinite input
        u, v = (p.value for p in (pa, pb, pc) if p.is_finite)
        if abs(u - v) <= tol.degenerate_tol * _scale(u, v):
            raise DegenerateQuad("solve_fourth needs pairwise distinct vertices")
        if pa.at_infinity:
            return ExtendedComplex.from_complex(2 * pc.value - pb.value)
        if pb.at_infinity:
            return ExtendedComplex.from_complex((pa.value + pc.value) / 2)
        return ExtendedComplex.from_complex(2 * pa.value - pb.value)

    fa, fb, fc = pa.value, pb.value, pc.value
    s = _scale(fa, fb, fc)
    if abs(fa - fb) <= tol.degenerate_tol * s or abs(fb - fc) <= tol.degenerate_tol * s \
            or abs(fa - fc) <= tol.degenerate_tol * s:
        raise DegenerateQuad("solve_fourth needs pairwise distinct vertices")
    num = fa * fb - 2 * fa * fc + fb * fc
    den = 2 * fb - fa - fc
    if abs(den) <= tol.degenerate_tol * s:
        if abs(num) <= tol.degenerate_tol * s * s:
            raise DegenerateQuad("singular linear system for the fourth vertex")
        return INFINITY
    return ExtendedComplex.from_complex(num / den)
