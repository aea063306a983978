"""Tension-spline collocation solver for the coupled Burgers system.

The package discretizes the coupled viscous Burgers equations with
exponential cubic B-splines in space (collocation at the knots, free
tension parameter p) and the Crank-Nicolson rule in time, linearizing the
quadratic terms so each step costs one banded solve. The public surface
covers the spline basis, the direct banded solvers, problem definitions,
the stepper, and error/convergence/search utilities; the ``solve`` console
script drives experiments from small config files.
"""

from .analysis import (
    ErrorReport,
    MaxReport,
    convergence_order,
    convergence_table,
    linf_error,
    search_p,
    track_maxima,
)
from .cli import ExperimentConfig, main, parse_config, run_experiment
from .exceptions import ConfigError, SingularSystemError, ValidationError
from .initial import CoefficientState, fit_initial
from .linalg import BandedSystem, TridiagonalSystem, solve_banded, solve_tridiagonal
from .problems import (
    ProblemSpec,
    TravelingWaveParams,
    problem1,
    problem2,
    problem3,
    traveling_wave_params,
)
from .splines import (
    NodalWeights,
    PieceCoefficients,
    SplineParams,
    eval_basis,
    eval_basis_d1,
    eval_basis_d2,
    evaluate,
    knots,
    make_params,
    nodal_values,
    nodal_values_grid,
    nodal_weights,
    piece_coefficients,
)
from .stepping import (
    AssembledSystem,
    NonlinearWeights,
    assemble,
    nonlinear_weights,
    nu_coefficients,
    run,
    step,
)

__version__ = "0.1.0"

__all__ = [
    "AssembledSystem",
    "BandedSystem",
    "CoefficientState",
    "ConfigError",
    "ErrorReport",
    "ExperimentConfig",
    "MaxReport",
    "NodalWeights",
    "NonlinearWeights",
    "PieceCoefficients",
    "ProblemSpec",
    "SingularSystemError",
    "SplineParams",
    "TravelingWaveParams",
    "TridiagonalSystem",
    "ValidationError",
    "assemble",
    "convergence_order",
    "convergence_table",
    "eval_basis",
    "eval_basis_d1",
    "eval_basis_d2",
    "evaluate",
    "fit_initial",
    "knots",
    "linf_error",
    "main",
    "make_params",
    "nodal_values",
    "nodal_values_grid",
    "nodal_weights",
    "nonlinear_weights",
    "nu_coefficients",
    "parse_config",
    "piece_coefficients",
    "problem1",
    "problem2",
    "problem3",
    "run",
    "run_experiment",
    "search_p",
    "step",
    "track_maxima",
    "traveling_wave_params",
]
