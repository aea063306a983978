"""Time stepping of the coupled Burgers system by spline collocation.

Each step discretizes the two equations with the Crank-Nicolson rule and
replaces the quadratic products at the new level by their Rubin-Graves
linearization (new factor times old factor, summed, minus the old product;
the old-product terms cancel against the explicit averages). Collocating at
the knots yields, per node m, one row in each field:

    nu1*d[m-1] + nu2*q[m-1] + nu3*d[m] + nu4*q[m] + nu5*d[m+1] + nu6*q[m+1]
        = nu7*d_old[m-1] + nu8*d_old[m] + nu9*d_old[m+1]

and the mirrored row with nu10..nu15 for the second field, where d and q are
the spline coefficients of U and V. Interleaving the unknowns as
(d_0, q_0, d_1, q_1, ...) gives a banded matrix of bandwidth (3, 3) once the
four ghost coefficients are eliminated through the Dirichlet data.
"""

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import ValidationError
from .initial import CoefficientState, fit_initial
from .linalg import BandedSystem, solve_banded
from .splines import (
    NodalWeights,
    SplineParams,
    nodal_values_grid,
    nodal_weights,
)

# The assembled one-step system is exactly a banded matrix bundled with its
# right side, so it reuses the solver's container type.
AssembledSystem = BandedSystem

_TIME_RTOL = 1e-9


@dataclass(frozen=True, eq=False)
class NonlinearWeights:
    """Nodal values and slopes of both fields, frozen at the current level.

    These are the coefficients that multiply the new-level unknowns in the
    linearized convection terms: ``u`` and ``ux`` hold U and U_x at every
    knot, ``v`` and ``vx`` the same for V.
    """

    u: np.ndarray
    ux: np.ndarray
    v: np.ndarray
    vx: np.ndarray


def nonlinear_weights(state: CoefficientState, weights: NodalWeights) -> NonlinearWeights:
    """Evaluate U, U_x, V, V_x at all knots from the coefficient state."""
    u, ux, _ = nodal_values_grid(state.delta, weights)
    v, vx, _ = nodal_values_grid(state.phi, weights)
    return NonlinearWeights(u=u, ux=ux, v=v, vx=vx)


def _nu_tables(
    nw: NonlinearWeights, w: NodalWeights, dt: float, k1: float, k2: float, k3: float
) -> np.ndarray:
    """All fifteen row coefficients at every node, shape (15, N+1).

    Rows 0..5 are nu1..nu6 (first field), rows 6..8 the shared explicit
    coefficients nu7..nu9, rows 9..14 are nu10..nu15 (second field).
    """
    r = 2.0 / dt
    cu = r + k1 * nw.ux + k2 * nw.vx
    du = k1 * nw.u + k2 * nw.v
    cv = r + k1 * nw.vx + k3 * nw.ux
    dv = k1 * nw.v + k3 * nw.u
    nu = np.empty((15, nw.u.shape[0]))
    nu[0] = cu * w.alpha1 + du * w.beta_l - w.gamma1
    nu[1] = k2 * (nw.ux * w.alpha1 + nw.u * w.beta_l)
    nu[2] = cu - w.gamma2
    nu[3] = k2 * nw.ux
    nu[4] = cu * w.alpha1 + du * w.beta_r - w.gamma1
    nu[5] = k2 * (nw.ux * w.alpha1 + nw.u * w.beta_r)
    nu[6] = r * w.alpha1 + w.gamma1
    nu[7] = r + w.gamma2
    nu[8] = nu[6]
    nu[9] = k3 * (nw.vx * w.alpha1 + nw.v * w.beta_l)
    nu[10] = cv * w.alpha1 + dv * w.beta_l - w.gamma1
    nu[11] = k3 * nw.vx
    nu[12] = cv - w.gamma2
    nu[13] = k3 * (nw.vx * w.alpha1 + nw.v * w.beta_r)
    nu[14] = cv * w.alpha1 + dv * w.beta_r - w.gamma1
    return nu


def nu_coefficients(
    node: int,
    nw: NonlinearWeights,
    weights: NodalWeights,
    dt: float,
    k1: float,
    k2: float,
    k3: float,
) -> np.ndarray:
    """Row coefficients nu1..nu15 at one node, in index order.

    Convenience accessor for inspection and testing; the assembly itself
    works on the full vectorized table.
    """
    _validate_dt(dt)
    return _nu_tables(nw, weights, dt, k1, k2, k3)[:, node].copy()


def _validate_dt(dt: float) -> None:
    if not math.isfinite(dt) or dt <= 0.0:
        raise ValidationError(f"time step must be positive and finite, got {dt}")


def assemble(
    state: CoefficientState,
    problem,
    params: SplineParams,
    dt: float,
    t_next: float,
) -> AssembledSystem:
    """Reduced linear system advancing the state by one step.

    The four ghost unknowns are eliminated with the Dirichlet values at
    ``t_next``; the right side uses the current state's ghost coefficients,
    which already satisfy the boundary identities at the current time. The
    result has dimension 2N+2 under the interleaved unknown ordering.
    """
    _validate_dt(dt)
    w = nodal_weights(params)
    nw = nonlinear_weights(state, w)
    nu = _nu_tables(nw, w, dt, problem.k1, problem.k2, problem.k3)
    n = 2 * params.N + 2
    rows = np.zeros((n, 7))
    rows[0::2, 1:7] = nu[0:6].T
    rows[1::2, 0:6] = nu[9:15].T

    d = state.delta
    q = state.phi
    nu7 = 2.0 / dt * w.alpha1 + w.gamma1
    nu8 = 2.0 / dt + w.gamma2
    rhs = np.empty(n)
    rhs[0::2] = nu7 * d[:-2] + nu8 * d[1:-1] + nu7 * d[2:]
    rhs[1::2] = nu7 * q[:-2] + nu8 * q[1:-1] + nu7 * q[2:]

    a1 = w.alpha1
    f1v = float(problem.f1(t_next))
    f2v = float(problem.f2(t_next))
    g1v = float(problem.g1(t_next))
    g2v = float(problem.g2(t_next))

    n1, n2, n3, n4, n5, n6 = nu[0:6, 0]
    rows[0, 1:7] = [0.0, 0.0, n3 - n1 / a1, n4 - n2 / a1, n5 - n1, n6 - n2]
    rhs[0] -= (n1 * f1v + n2 * g1v) / a1
    n10, n11, n12, n13, n14, n15 = nu[9:15, 0]
    rows[1, 0:6] = [0.0, 0.0, n12 - n10 / a1, n13 - n11 / a1, n14 - n10, n15 - n11]
    rhs[1] -= (n10 * f1v + n11 * g1v) / a1

    n1, n2, n3, n4, n5, n6 = nu[0:6, -1]
    rows[-2, 1:7] = [n1 - n5, n2 - n6, n3 - n5 / a1, n4 - n6 / a1, 0.0, 0.0]
    rhs[-2] -= (n5 * f2v + n6 * g2v) / a1
    n10, n11, n12, n13, n14, n15 = nu[9:15, -1]
    rows[-1, 0:6] = [n10 - n14, n11 - n15, n12 - n14 / a1, n13 - n15 / a1, 0.0, 0.0]
    rhs[-1] -= (n14 * f2v + n15 * g2v) / a1

    return BandedSystem(n=n, kl=3, ku=3, rows=rows, rhs=rhs)


def step(
    state: CoefficientState,
    problem,
    params: SplineParams,
    dt: float,
    t_next: float | None = None,
) -> CoefficientState:
    """Advance the coefficient state by one time step.

    One banded solve, no inner iteration. ``t_next`` pins the exact new time
    when the caller tracks it as an integer multiple of dt; by default it is
    ``state.t + dt``. Ghost coefficients are restored from the boundary data
    at the new time.
    """
    if t_next is None:
        t_next = state.t + dt
    sys = assemble(state, problem, params, dt, t_next)
    x = solve_banded(sys)
    w = nodal_weights(params)
    a1 = w.alpha1
    delta = np.empty(params.N + 3)
    phi = np.empty(params.N + 3)
    delta[1:-1] = x[0::2]
    phi[1:-1] = x[1::2]
    delta[0] = (float(problem.f1(t_next)) - delta[1] - a1 * delta[2]) / a1
    phi[0] = (float(problem.g1(t_next)) - phi[1] - a1 * phi[2]) / a1
    delta[-1] = (float(problem.f2(t_next)) - delta[-2] - a1 * delta[-3]) / a1
    phi[-1] = (float(problem.g2(t_next)) - phi[-2] - a1 * phi[-3]) / a1
    return CoefficientState(delta=delta, phi=phi, t=float(t_next))


def _count_steps(t: float, dt: float) -> int:
    """Number of steps reaching time t, rejecting non-commensurate times."""
    if t < 0.0:
        raise ValidationError(f"time must be nonnegative, got {t}")
    k = int(round(t / dt))
    if abs(k * dt - t) > _TIME_RTOL * max(abs(t), dt):
        raise ValidationError(f"time {t} is not an integer multiple of dt = {dt}")
    return k


def run(
    problem,
    params: SplineParams,
    dt: float,
    t_final: float,
    snapshot_times: tuple[float, ...] = (),
) -> tuple[CoefficientState, list[CoefficientState]]:
    """March from the fitted initial state to ``t_final``.

    Time is accumulated as ``k * dt`` rather than by repeated addition, so
    thousands of steps stay drift-free. Snapshot times must be integer
    multiples of dt and no later than ``t_final``; the returned snapshot
    states follow the requested order.
    """
    _validate_dt(dt)
    n_steps = _count_steps(t_final, dt)
    snap_steps = []
    for s in snapshot_times:
        k = _count_steps(s, dt)
        if k > n_steps:
            raise ValidationError(f"snapshot time {s} lies beyond t_final = {t_final}")
        snap_steps.append(k)
    wanted = set(snap_steps)

    state = fit_initial(problem, params)
    captured = {0: state} if 0 in wanted else {}
    for k in range(1, n_steps + 1):
        state = step(state, problem, params, dt, t_next=k * dt)
        if k in wanted:
            captured[k] = state
    return state, [captured[k] for k in snap_steps]
