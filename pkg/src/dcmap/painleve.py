"""Unitary special solution of the discrete Painleve-II recurrence.

The solution lives on the unit circle, u_n = exp(i*alpha_n) with
alpha_0 = c*pi/4 and 0 < alpha_n < pi/2.  Each step is a Moebius solve
    u_{n+1} = i (A + B u_n) / (B - A u_n),
    A = c u_n + n (u_n^2+1)(u_{n-1} + i u_n) / (i + u_{n-1} u_n),
    B = (n+1)(u_n^2 - 1),
renormalized to unit modulus with the pre-normalization drift recorded.
The angles tie to the lattice through the diagonal edge relation
f(n, n+1) - f(n, n) = exp(2 i alpha_n) (f(n+1, n) - f(n, n)).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from . import _highprec
from .errors import BranchLoss, ZeroEdge
from .lattice import ConformalLattice
from .numerics import DEFAULT_TOL, ToleranceConfig

__all__ = ["PainleveSolution", "dpii_solve", "dpii_residual", "alpha_from_lattice"]

_DRIFT_LIMIT = 1e-6


@dataclass
class PainleveSolution:
    """Angle sequence of the unitary branch; alphas[n] is alpha_n."""

    c: float
    alphas: list
    drifts: list

    @property
    def steps(self) -> int:
        return len(self.alphas) - 1

    def u(self, n: int) -> complex:
        return cmath.exp(1j * self.alphas[n])


def dpii_solve(c: float, steps: int) -> PainleveSolution:
    """Run the unitary branch for the given number of steps.

    Raises BranchLoss if an angle leaves (0, pi/2) or the modulus drift
    exceeds 1e-6, either of which means the branch was lost.
    """
    c = float(c)
    if not 0.0 < c < 2.0:
        raise ValueError(f"exponent must satisfy 0 < c < 2, got {c}")
    if steps < 1:
        raise ValueError("steps must be at least 1")
    alphas, drifts = _highprec.unitary_angles(c, steps)
    for n, a in enumerate(alphas):
        if not 0.0 < a < math.pi / 2:
            raise BranchLoss(f"angle {a} outside (0, pi/2) at step {n}", step=n)
    for n, d in enumerate(drifts):
        if d > _DRIFT_LIMIT:
            raise BranchLoss(f"modulus drift {d:.3e} at step {n}", step=n)
    return PainleveSolution(c=c, alphas=alphas, drifts=drifts)


def dpii_residual(sol: PainleveSolution, n: int) -> float:
    """Defect of the recurrence at index n, scaled by the largest term."""
    if not 1 <= n <= sol.steps - 1:
        raise ValueError(f"residual needs 1 <= n <= {sol.steps - 1}, got {n}")
    u_prev, u_n, u_next = sol.u(n - 1), sol.u(n), sol.u(n + 1)
    t1 = (n + 1) * (u_n * u_n - 1) * (u_next - 1j * u_n) / (1j + u_n * u_next)
    t2 = n * (u_n * u_n + 1) * (u_prev + 1j * u_n) / (1j + u_prev * u_n)
    rhs = sol.c * u_n
    norm = max(abs(t1), abs(t2), abs(rhs))
    return abs(t1 - t2 - rhs) / norm


def alpha_from_lattice(lat: ConformalLattice, n: int,
                       tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Half the turning angle of the two diagonal edges at f(n, n)."""
    if n + 1 > lat.size:
        raise IndexError(f"diagonal step {n} needs lattice size > {n}")
    base = lat.at(n, n)
    up = lat.at(n, n + 1)
    right = lat.at(n + 1, n)
    if not (base.is_finite and up.is_finite and right.is_finite):
        raise ZeroEdge(f"diagonal stencil at n={n} touches the infinite vertex")
    e_up = up.value - base.value
    e_right = right.value - base.value
    scale = max(1.0, abs(base.value))
    if abs(e_up) <= tol.degenerate_tol * scale or abs(e_right) <= tol.degenerate_tol * scale:
        raise ZeroEdge(f"degenerate diagonal edge at n={n}")
    return cmath.phase(e_up / e_right) / 2.0
