"""Tests of error reports, convergence orders, maxima tracking and the search."""

import math

import numpy as np
import pytest

from expburgers import (
    ValidationError,
    convergence_order,
    convergence_table,
    fit_initial,
    knots,
    linf_error,
    make_params,
    nodal_values_grid,
    nodal_weights,
    problem1,
    problem2,
    problem3,
    run,
    search_p,
    track_maxima,
)
from expburgers.analysis import _minimize_log_scan


def test_linf_error_of_freshly_fitted_state_is_tiny():
    problem = problem1()
    params = make_params(problem.a, problem.b, 30, 1.0)
    state = fit_initial(problem, params)
    report = linf_error(state, problem, params, 0.0)
    assert report.linf_u < 1e-12
    assert report.linf_v < 1e-12
    assert report.dt is None
    assert report.N == 30
    assert report.p == 1.0


def test_linf_error_matches_rescan():
    problem = problem1()
    params = make_params(problem.a, problem.b, 24, 1.0)
    final, _ = run(problem, params, 0.01, 0.1)
    report = linf_error(final, problem, params, 0.1, dt=0.01)
    w = nodal_weights(params)
    x = knots(params)
    u, _, _ = nodal_values_grid(final.delta, w)
    err = np.abs(problem.exact_u(x, 0.1) - u)
    assert report.linf_u == pytest.approx(float(np.max(err)), rel=1e-15)
    assert report.argmax_x_u == x[int(np.argmax(err))]
    assert report.t == 0.1


def test_linf_error_requires_exact_solution():
    problem = problem3(2.0, 10.0, 10.0)
    params = make_params(0.0, 1.0, 10, 1.0)
    state = fit_initial(problem, params)
    with pytest.raises(ValidationError):
        linf_error(state, problem, params, 0.0)


def test_convergence_order_values():
    assert convergence_order(4e-4, 1e-4, 50, 100) == pytest.approx(2.0, rel=1e-14)
    # published error pair from the refinement study; the order implied by
    # the printed errors themselves
    assert convergence_order(3.9213e-4, 9.9430e-5, 50, 100) == pytest.approx(
        1.9795789076, abs=1e-9
    )
    # non-doubling grids use the actual ratio
    assert convergence_order(9e-4, 1e-4, 50, 150) == pytest.approx(2.0, rel=1e-14)


def test_convergence_order_rejects_bad_inputs():
    with pytest.raises(ValidationError):
        convergence_order(0.0, 1e-4, 50, 100)
    with pytest.raises(ValidationError):
        convergence_order(1e-4, -1e-4, 50, 100)
    with pytest.raises(ValidationError):
        convergence_order(1e-3, 1e-4, 100, 100)
    with pytest.raises(ValidationError):
        convergence_order(1e-3, 1e-4, 0, 100)


def test_minimize_log_scan_recovers_synthetic_minimum():
    """A smooth one-dip objective is located to well under 1% in u-space."""
    target = math.log(3.0)

    def fn(u):
        return (u - target) ** 2 + 0.7

    u_best, value = _minimize_log_scan(fn, math.log(1e-6), math.log(4.0))
    assert math.exp(u_best) == pytest.approx(3.0, rel=1e-2)
    assert value == pytest.approx(0.7, abs=1e-4)


def test_minimize_log_scan_keeps_best_extra_point():
    def fn(u):
        return abs(u)

    u_best, value = _minimize_log_scan(fn, -5.0, 2.0, extras=(0.0,))
    assert u_best == 0.0
    assert value == 0.0


def test_search_p_beats_the_default_tension():
    problem = problem1()
    n, dt, t_final = 40, 0.01, 0.5
    params = make_params(problem.a, problem.b, n, 1.0)
    final, _ = run(problem, params, dt, t_final)
    at_default = linf_error(final, problem, params, t_final, dt=dt)
    best_p, best_linf = search_p(problem, n, dt, t_final, p_lo=1e-6, p_hi=4.0)
    assert 1e-6 <= best_p <= 4.0
    assert best_linf <= max(at_default.linf_u, at_default.linf_v)


def test_search_p_rejects_bad_inputs():
    with pytest.raises(ValidationError):
        search_p(problem3(2.0, 10.0, 10.0), 20, 0.01, 0.1)
    with pytest.raises(ValidationError):
        search_p(problem1(), 20, 0.01, 0.1, p_lo=2.0, p_hi=1.0)
    with pytest.raises(ValidationError):
        search_p(problem1(), 20, 0.01, 0.1, p_lo=0.0, p_hi=1.0)


def test_track_maxima_matches_rescan():
    problem = problem3(2.0, 10.0, 10.0)
    params = make_params(0.0, 1.0, 20, 1.0)
    times = (0.1, 0.2)
    report = track_maxima(problem, params, 0.01, times)
    assert report.t == pytest.approx(np.array(times))
    _, snaps = run(problem, params, 0.01, 0.2, snapshot_times=times)
    w = nodal_weights(params)
    x = knots(params)
    for j, snap in enumerate(snaps):
        u, _, _ = nodal_values_grid(snap.delta, w)
        v, _, _ = nodal_values_grid(snap.phi, w)
        assert report.max_u[j] == np.max(u)
        assert report.x_u[j] == x[int(np.argmax(u))]
        assert report.max_v[j] == np.max(v)
        assert report.x_v[j] == x[int(np.argmax(v))]


def test_track_maxima_of_zero_field_sits_at_first_knot():
    from expburgers.problems import ProblemSpec, _zero

    zero_profile = lambda x: np.zeros_like(np.asarray(x, dtype=float))  # noqa: E731
    problem = ProblemSpec(
        k1=1.0, k2=1.0, k3=1.0, a=0.0, b=1.0,
        f=zero_profile, g=zero_profile,
        f1=_zero, f2=_zero, g1=_zero, g2=_zero,
    )
    params = make_params(0.0, 1.0, 10, 1.0)
    report = track_maxima(problem, params, 0.1, (0.1,))
    assert report.max_u[0] == 0.0
    assert report.x_u[0] == 0.0


def test_track_maxima_requires_snapshots():
    problem = problem3(2.0, 10.0, 10.0)
    params = make_params(0.0, 1.0, 10, 1.0)
    with pytest.raises(ValidationError):
        track_maxima(problem, params, 0.01, ())


def test_convergence_table_orders_are_consistent():
    problem = problem1()
    table = convergence_table(problem, (8, 16, 32), 0.005, 1.0, 0.05)
    assert [row[0] for row in table] == [8, 16, 32]
    assert table[0][2] is None
    for (n0, e0, _), (n1, e1, order) in zip(table, table[1:]):
        assert order == pytest.approx(convergence_order(e0, e1, n0, n1), rel=1e-14)
        assert e1 < e0
    # the sine pair refines at close to second order even on coarse grids
    assert 1.7 < table[1][2] < 2.3


def test_convergence_table_rejects_bad_levels():
    problem = problem1()
    with pytest.raises(ValidationError):
        convergence_table(problem, (8,), 0.01, 1.0, 0.1)
    with pytest.raises(ValidationError):
        convergence_table(problem, (16, 8), 0.01, 1.0, 0.1)
