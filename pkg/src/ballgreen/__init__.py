"""Closed-form Green's functions for the Neumann-Poisson and EEG problems on n-balls.

The evaluators reduce every radial line integral to elementary
antiderivatives; an independent quadrature and finite-difference oracle
(:mod:`ballgreen.oracle`) and a seeded property suite (:mod:`ballgreen.suite`)
check them against the defining PDE and boundary conditions.
"""

from .geometry import (
    BallSpec,
    CenteredSourceError,
    Flag,
    GreenError,
    GreenEval,
    Method,
    SourceCoincidenceError,
    fundamental_phi,
    fundamental_psi,
    invert_point,
    surface_area,
)
from .greens import (
    Dipole,
    Form,
    greens_eeg,
    greens_eeg_radial,
    greens_eeg_radius,
    greens_poisson,
    greens_poisson_radius,
)
from .integrals import gamma_integral, primitive_J, z_integral
from .oracle import (
    QuadratureConfig,
    QuadratureError,
    StencilError,
    boundary_normal_derivative,
    fd_gradient,
    fd_laplacian,
    quad_integral,
)
from .suite import (
    CheckRecord,
    SuiteReport,
    check_eeg_poisson_relation,
    representation_solve_check,
    run_suite,
)

__version__ = "0.1.0"

__all__ = [
    "BallSpec",
    "CenteredSourceError",
    "CheckRecord",
    "Dipole",
    "Flag",
    "Form",
    "GreenError",
    "GreenEval",
    "Method",
    "QuadratureConfig",
    "QuadratureError",
    "SourceCoincidenceError",
    "StencilError",
    "SuiteReport",
    "boundary_normal_derivative",
    "check_eeg_poisson_relation",
    "fd_gradient",
    "fd_laplacian",
    "fundamental_phi",
    "fundamental_psi",
    "gamma_integral",
    "greens_eeg",
    "greens_eeg_radial",
    "greens_eeg_radius",
    "greens_poisson",
    "greens_poisson_radius",
    "invert_point",
    "primitive_J",
    "quad_integral",
    "representation_solve_check",
    "run_suite",
    "surface_area",
    "z_integral",
]
