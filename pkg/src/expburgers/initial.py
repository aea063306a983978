"""Interpolating fit of the initial profiles in the tension-spline basis.

The fit solves one tridiagonal system per unknown field. Interior rows
enforce collocation of the nodal values; the first and last rows fold the
ghost coefficients into the system through the end-slope identities, so the
fitted spline reproduces both the nodal values and the derivatives at the
two boundary nodes.
"""

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import ValidationError
from .linalg import TridiagonalSystem, solve_tridiagonal
from .splines import NodalWeights, SplineParams, knots, nodal_weights


@dataclass(frozen=True, eq=False)
class CoefficientState:
    """Spline coefficients of both fields at one time level.

    ``delta`` holds the U coefficients and ``phi`` the V coefficients, each
    of length N + 3 with the ghost entries at the two ends.
    """

    delta: np.ndarray
    phi: np.ndarray
    t: float


def _end_slopes(fn, dfn, a: float, b: float, h: float) -> tuple[float, float]:
    """Boundary derivatives of a profile, analytic when available.

    Falls back to one-sided three-point differences of the profile itself,
    which keeps the overall second-order accuracy of the fit.
    """
    if dfn is not None:
        return float(dfn(a)), float(dfn(b))
    da = (-3.0 * float(fn(a)) + 4.0 * float(fn(a + h)) - float(fn(a + 2.0 * h))) / (2.0 * h)
    db = (3.0 * float(fn(b)) - 4.0 * float(fn(b - h)) + float(fn(b - 2.0 * h))) / (2.0 * h)
    return da, db


def _fit_one(values: np.ndarray, da: float, db: float, w: NodalWeights) -> np.ndarray:
    """Fit one field; returns the full coefficient vector with ghosts."""
    n = values.shape[0]
    diag = np.ones(n)
    upper = np.full(n - 1, w.alpha1)
    lower = np.full(n - 1, w.alpha1)
    upper[0] = 2.0 * w.alpha1
    lower[-1] = 2.0 * w.alpha1
    rhs = values.astype(float, copy=True)
    rhs[0] -= (w.alpha1 / w.beta_l) * da
    rhs[-1] -= (w.alpha1 / w.beta_r) * db
    mid = solve_tridiagonal(TridiagonalSystem(lower=lower, diag=diag, upper=upper, rhs=rhs))
    out = np.empty(n + 2)
    out[1:-1] = mid
    out[0] = mid[1] + da / w.beta_l
    out[-1] = mid[-2] + db / w.beta_r
    return out


def fit_initial(problem, params: SplineParams) -> CoefficientState:
    """Spline coefficients interpolating the initial data of both fields."""
    same_a = math.isclose(problem.a, params.a, rel_tol=1e-12, abs_tol=1e-12)
    same_b = math.isclose(problem.b, params.b, rel_tol=1e-12, abs_tol=1e-12)
    if not (same_a and same_b):
        raise ValidationError(
            f"grid domain [{params.a}, {params.b}] does not match "
            f"problem domain [{problem.a}, {problem.b}]"
        )
    w = nodal_weights(params)
    x = knots(params)
    uvals = np.asarray(problem.f(x), dtype=float)
    vvals = np.asarray(problem.g(x), dtype=float)
    if uvals.shape != x.shape or vvals.shape != x.shape:
        raise ValidationError("initial profiles must map the knots elementwise")
    da_u, db_u = _end_slopes(problem.f, problem.df, params.a, params.b, params.h)
    da_v, db_v = _end_slopes(problem.g, problem.dg, params.a, params.b, params.h)
    delta = _fit_one(uvals, da_u, db_u, w)
    phi = _fit_one(vvals, da_v, db_v, w)
    return CoefficientState(delta=delta, phi=phi, t=0.0)
