"""Discrete conformal lattices (power, square and logarithm maps), their
Schramm-type circle patterns, and numerical verification of their
structural and asymptotic behavior."""

from .asymptotics import (
    AsymptoticFit,
    BoundReport,
    LinearizedModel,
    check_diagonal_growth,
    check_lemma_bounds,
    check_painleve_asymptote,
    check_xy_decay,
    fit_radius_growth,
)
from .errors import (
    BranchLoss,
    DcmapError,
    DegenerateQuad,
    EquiViolation,
    InsufficientData,
    MissingNeighbor,
    SingularStep,
    ZeroEdge,
)
from .geometry import (
    CirclePattern,
    QuadCell,
    circles,
    incidence_check,
    is_embedded,
    is_immersed,
)
from .lattice import (
    ConformalLattice,
    LatticeIndex,
    LatticeKind,
    boundary_extend,
    constraint_residual,
    dual_map,
    generate,
    generate_naive,
)
from .numerics import (
    DEFAULT_TOL,
    INFINITY,
    ExtendedComplex,
    ToleranceConfig,
    cross_ratio,
    solve_fourth,
)
from .painleve import PainleveSolution, alpha_from_lattice, dpii_residual, dpii_solve
from .radii import (
    EdgeRatioField,
    RadiusField,
    SublatticeLabel,
    dual_radii,
    extract_radii,
    radius_residuals,
    sign_condition,
    xy_from_radii,
    xy_residuals,
)
from .render import RenderOptions, render_svg
from .serialize import (
    lattice_from_json,
    lattice_to_json,
    load_lattice,
    painleve_to_csv,
    radii_from_csv,
    radii_to_csv,
    save_lattice,
)

__version__ = "0.1.0"
