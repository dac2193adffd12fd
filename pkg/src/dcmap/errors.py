"""Exception types shared across the package."""

from __future__ import annotations


class DcmapError(Exception):
    """Base class for all errors raised by this package."""


class DegenerateQuad(DcmapError):
    """A quadrilateral operation hit coincident or collinear vertices."""

    def __init__(self, message: str, index=None):
        super().__init__(message)
        self.index = index


class SingularStep(DcmapError):
    """The linear solve for the next boundary value is singular."""

    def __init__(self, message: str, index=None):
        super().__init__(message)
        self.index = index


class ZeroEdge(DcmapError):
    """An edge difference vanished where a nonzero edge is required."""

    def __init__(self, message: str, index=None):
        super().__init__(message)
        self.index = index


class EquiViolation(DcmapError):
    """Edge lengths at an even vertex disagree beyond tolerance."""

    def __init__(self, message: str, index=None, spread: float | None = None):
        super().__init__(message)
        self.index = index
        self.spread = spread


class MissingNeighbor(DcmapError):
    """A stencil evaluation referenced a label that is not stored."""

    def __init__(self, message: str, label=None):
        super().__init__(message)
        self.label = label


class BranchLoss(DcmapError):
    """The unitary recurrence branch left its defining window."""

    def __init__(self, message: str, step: int | None = None):
        super().__init__(message)
        self.step = step


class InsufficientData(DcmapError):
    """Not enough samples to run the requested asymptotic analysis."""
