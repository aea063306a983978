"""Error measurement, convergence orders, tension search, maxima tracking.

Everything here works on the discrete norm of the method: values at the
knots only, no inter-knot sampling.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import SingularSystemError, ValidationError
from .initial import CoefficientState
from .splines import SplineParams, knots, make_params, nodal_values_grid, nodal_weights
from .stepping import run

logger = logging.getLogger(__name__)

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class ErrorReport:
    """Maximum nodal errors of one run, with the knots attaining them.

    ``dt`` is optional because the report can describe a bare state whose
    time history is unknown to the caller.
    """

    linf_u: float
    linf_v: float
    argmax_x_u: float
    argmax_x_v: float
    N: int
    dt: float | None
    p: float
    t: float


@dataclass(frozen=True, eq=False)
class MaxReport:
    """Signed nodal maxima of both fields at each snapshot time."""

    t: np.ndarray
    max_u: np.ndarray
    x_u: np.ndarray
    max_v: np.ndarray
    x_v: np.ndarray


def linf_error(
    state: CoefficientState,
    problem,
    params: SplineParams,
    t: float,
    dt: float | None = None,
) -> ErrorReport:
    """Maximum absolute nodal error against the attached exact solution."""
    if problem.exact_u is None or problem.exact_v is None:
        raise ValidationError("problem carries no exact solution to compare against")
    w = nodal_weights(params)
    x = knots(params)
    u, _, _ = nodal_values_grid(state.delta, w)
    v, _, _ = nodal_values_grid(state.phi, w)
    err_u = np.abs(np.asarray(problem.exact_u(x, t), dtype=float) - u)
    err_v = np.abs(np.asarray(problem.exact_v(x, t), dtype=float) - v)
    iu = int(np.argmax(err_u))
    iv = int(np.argmax(err_v))
    return ErrorReport(
        linf_u=float(err_u[iu]),
        linf_v=float(err_v[iv]),
        argmax_x_u=float(x[iu]),
        argmax_x_v=float(x[iv]),
        N=params.N,
        dt=dt,
        p=params.p,
        t=float(t),
    )


def convergence_order(e_coarse: float, e_fine: float, n_coarse: int, n_fine: int) -> float:
    """Observed order from two error levels: ln(ec/ef) / ln(nf/nc).

    Natural logs of the N ratio, so non-doubling sequences like
    50, 100, 150, ... are handled directly.
    """
    if e_coarse <= 0.0 or e_fine <= 0.0:
        raise ValidationError("errors must be positive to take logarithms")
    if n_coarse <= 0 or n_fine <= n_coarse:
        raise ValidationError("need n_fine > n_coarse > 0")
    return math.log(e_coarse / e_fine) / math.log(n_fine / n_coarse)


def _golden_refine(fn, lo: float, hi: float, tol: float) -> None:
    """Golden-section descent of fn on [lo, hi] until the width drops to tol."""
    c = hi - _INV_PHI * (hi - lo)
    d = lo + _INV_PHI * (hi - lo)
    fc = fn(c)
    fd = fn(d)
    while hi - lo > tol:
        if fc <= fd:
            hi, d, fd = d, c, fc
            c = hi - _INV_PHI * (hi - lo)
            fc = fn(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _INV_PHI * (hi - lo)
            fd = fn(d)


def _minimize_log_scan(
    fn,
    u_lo: float,
    u_hi: float,
    extras: tuple[float, ...] = (),
    samples: int = 40,
    tol: float = 1e-3,
) -> tuple[float, float]:
    """Minimize fn over [u_lo, u_hi] in log coordinates.

    Evaluates a uniform grid (plus any in-range extras), then refines the
    best bracket by golden section down to width tol. Every evaluation is
    memoized, so the returned (u, value) pair is the best point actually
    visited; ties break to the earliest evaluation.
    """
    grid = list(np.linspace(u_lo, u_hi, samples))
    grid.extend(u for u in extras if u_lo <= u <= u_hi)
    grid.sort()
    memo: dict[float, float] = {}

    def f(u: float) -> float:
        if u not in memo:
            memo[u] = fn(u)
        return memo[u]

    values = [f(u) for u in grid]
    i = int(np.argmin(values))
    bracket_lo = grid[max(i - 1, 0)]
    bracket_hi = grid[min(i + 1, len(grid) - 1)]
    if bracket_hi > bracket_lo:
        _golden_refine(f, bracket_lo, bracket_hi, tol)
    return min(memo.items(), key=lambda item: item[1])


def search_p(
    problem,
    N: int,
    dt: float,
    t_final: float,
    p_lo: float = 1e-8,
    p_hi: float = 10.0,
) -> tuple[float, float]:
    """Tension parameter minimizing the final-time error, with that error.

    Scans a 40-point logarithmic grid over [p_lo, p_hi] (plus p = 1 when it
    lies inside), then refines the best bracket by golden section to 1e-3
    relative width. Tension values that make the collocation matrix singular
    are logged and skipped. Returns (best_p, best_linf) where the objective
    is the larger of the two fields' errors.
    """
    if problem.exact_u is None or problem.exact_v is None:
        raise ValidationError("tension search needs a problem with an exact solution")
    if not (0.0 < p_lo < p_hi) or not (math.isfinite(p_lo) and math.isfinite(p_hi)):
        raise ValidationError(f"need 0 < p_lo < p_hi, got [{p_lo}, {p_hi}]")

    def objective(log_p: float) -> float:
        p = math.exp(log_p)
        try:
            params = make_params(problem.a, problem.b, N, p)
            final, _ = run(problem, params, dt, t_final)
            report = linf_error(final, problem, params, t_final, dt=dt)
            return max(report.linf_u, report.linf_v)
        except SingularSystemError as exc:
            logger.warning("skipping p = %.6g: %s", p, exc)
            return math.inf

    u_best, best_val = _minimize_log_scan(
        objective, math.log(p_lo), math.log(p_hi), extras=(0.0,)
    )
    if not math.isfinite(best_val):
        raise SingularSystemError("every tension candidate produced a singular system")
    return math.exp(u_best), best_val


def track_maxima(
    problem,
    params: SplineParams,
    dt: float,
    snapshot_times: tuple[float, ...],
) -> MaxReport:
    """Signed nodal maxima of U and V at the requested times.

    Maxima are taken over knot values only; ties break to the lowest knot
    index.
    """
    times = tuple(snapshot_times)
    if not times:
        raise ValidationError("at least one snapshot time is required")
    _, snaps = run(problem, params, dt, max(times), snapshot_times=times)
    w = nodal_weights(params)
    x = knots(params)
    max_u = np.empty(len(snaps))
    x_u = np.empty(len(snaps))
    max_v = np.empty(len(snaps))
    x_v = np.empty(len(snaps))
    for j, snap in enumerate(snaps):
        u, _, _ = nodal_values_grid(snap.delta, w)
        v, _, _ = nodal_values_grid(snap.phi, w)
        iu = int(np.argmax(u))
        iv = int(np.argmax(v))
        max_u[j] = u[iu]
        x_u[j] = x[iu]
        max_v[j] = v[iv]
        x_v[j] = x[iv]
    return MaxReport(t=np.array(times, dtype=float), max_u=max_u, x_u=x_u, max_v=max_v, x_v=x_v)


def convergence_table(
    problem,
    n_values: tuple[int, ...],
    dt: float,
    p: float,
    t_final: float,
) -> list[tuple[int, float, float | None]]:
    """Per-level errors and observed orders for an increasing N sequence.

    Each row is (N, linf, order), with the error taken as the larger of the
    two fields' maxima and the first row's order left as None.
    """
    if len(n_values) < 2:
        raise ValidationError("need at least two grid levels to observe an order")
    if any(b <= a for a, b in zip(n_values, n_values[1:])):
        raise ValidationError("grid levels must be strictly increasing")
    rows: list[tuple[int, float, float | None]] = []
    prev: tuple[int, float] | None = None
    for n in n_values:
        params = make_params(problem.a, problem.b, n, p)
        final, _ = run(problem, params, dt, t_final)
        report = linf_error(final, problem, params, t_final, dt=dt)
        linf = max(report.linf_u, report.linf_v)
        order = convergence_order(prev[1], linf, prev[0], n) if prev else None
        rows.append((n, linf, order))
        prev = (n, linf)
    return rows
