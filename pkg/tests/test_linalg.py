"""Direct solver tests against dense numpy oracles."""

import numpy as np
import pytest

from expburgers import (
    BandedSystem,
    SingularSystemError,
    TridiagonalSystem,
    ValidationError,
    solve_banded,
    solve_tridiagonal,
)


def band_to_dense(system: BandedSystem) -> np.ndarray:
    dense = np.zeros((system.n, system.n))
    for r in range(system.n):
        for j in range(system.kl + system.ku + 1):
            c = r - system.kl + j
            if 0 <= c < system.n:
                dense[r, c] = system.rows[r, j]
    return dense


def random_banded(rng, n, kl, ku):
    rows = rng.uniform(-1.0, 1.0, size=(n, kl + ku + 1))
    # keep the diagonal dominant-ish so the dense comparison is not polluted
    # by conditioning; pivoting itself gets dedicated tests below
    rows[:, kl] += np.where(rows[:, kl] >= 0.0, 2.0, -2.0)
    for r in range(n):
        for j in range(kl + ku + 1):
            c = r - kl + j
            if not 0 <= c < n:
                rows[r, j] = 0.0
    return BandedSystem(n=n, kl=kl, ku=ku, rows=rows, rhs=rng.uniform(-1.0, 1.0, size=n))


def test_thomas_two_by_two():
    system = TridiagonalSystem(
        lower=np.array([1.0]),
        diag=np.array([2.0, 2.0]),
        upper=np.array([1.0]),
        rhs=np.array([3.0, 3.0]),
    )
    assert solve_tridiagonal(system) == pytest.approx([1.0, 1.0])


def test_thomas_identity():
    rhs = np.arange(1.0, 8.0)
    system = TridiagonalSystem(
        lower=np.zeros(6), diag=np.ones(7), upper=np.zeros(6), rhs=rhs
    )
    assert solve_tridiagonal(system) == pytest.approx(rhs)


def test_thomas_single_equation():
    system = TridiagonalSystem(
        lower=np.zeros(0), diag=np.array([4.0]), upper=np.zeros(0), rhs=np.array([2.0])
    )
    assert solve_tridiagonal(system) == pytest.approx([0.5])


def test_thomas_matches_dense_solve():
    rng = np.random.default_rng(42)
    n = 12
    lower = rng.uniform(-1.0, 1.0, n - 1)
    upper = rng.uniform(-1.0, 1.0, n - 1)
    diag = rng.uniform(2.5, 3.5, n) * rng.choice([-1.0, 1.0], n)
    rhs = rng.uniform(-1.0, 1.0, n)
    dense = np.diag(diag) + np.diag(lower, -1) + np.diag(upper, 1)
    want = np.linalg.solve(dense, rhs)
    got = solve_tridiagonal(TridiagonalSystem(lower=lower, diag=diag, upper=upper, rhs=rhs))
    assert np.max(np.abs(got - want)) < 1e-12


def test_thomas_recovers_known_solution():
    rng = np.random.default_rng(7)
    n = 20
    lower = rng.standard_normal(n - 1)
    upper = rng.standard_normal(n - 1)
    diag = 4.0 + rng.uniform(0.0, 1.0, n)
    x = rng.standard_normal(n)
    dense = np.diag(diag) + np.diag(lower, -1) + np.diag(upper, 1)
    got = solve_tridiagonal(
        TridiagonalSystem(lower=lower, diag=diag, upper=upper, rhs=dense @ x)
    )
    assert got == pytest.approx(x, rel=1e-12, abs=1e-12)


def test_thomas_detects_singularity():
    with pytest.raises(SingularSystemError):
        solve_tridiagonal(
            TridiagonalSystem(
                lower=np.array([1.0]),
                diag=np.array([0.0, 1.0]),
                upper=np.array([1.0]),
                rhs=np.array([1.0, 1.0]),
            )
        )
    # elimination makes the second pivot vanish: [[1, 1], [1, 1]]
    with pytest.raises(SingularSystemError):
        solve_tridiagonal(
            TridiagonalSystem(
                lower=np.array([1.0]),
                diag=np.array([1.0, 1.0]),
                upper=np.array([1.0]),
                rhs=np.array([1.0, 2.0]),
            )
        )


def test_thomas_shape_validation():
    with pytest.raises(ValidationError):
        solve_tridiagonal(
            TridiagonalSystem(
                lower=np.zeros(3), diag=np.ones(3), upper=np.zeros(2), rhs=np.ones(3)
            )
        )
    with pytest.raises(ValidationError):
        solve_tridiagonal(
            TridiagonalSystem(
                lower=np.zeros(0), diag=np.zeros(0), upper=np.zeros(0), rhs=np.zeros(0)
            )
        )
    with pytest.raises(ValidationError):
        solve_tridiagonal(
            TridiagonalSystem(
                lower=np.array([np.nan]),
                diag=np.ones(2),
                upper=np.zeros(1),
                rhs=np.ones(2),
            )
        )


def test_banded_matches_dense_on_many_random_systems():
    """100 random banded systems agree with the dense oracle to 1e-10."""
    rng = np.random.default_rng(1234)
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(4, 41))
        kl = int(rng.integers(1, min(4, n)))
        ku = int(rng.integers(1, min(4, n)))
        system = random_banded(rng, n, kl, ku)
        want = np.linalg.solve(band_to_dense(system), system.rhs)
        got = solve_banded(system)
        worst = max(worst, float(np.max(np.abs(got - want))))
    assert worst <= 1e-10, f"worst deviation {worst:.3e}"


def test_banded_interleaved_shape():
    """The stepper's (3,3) interleaved layout round-trips a known solution."""
    rng = np.random.default_rng(9)
    n = 2 * 14 + 2
    system = random_banded(rng, n, 3, 3)
    x = rng.standard_normal(n)
    rhs = band_to_dense(system) @ x
    got = solve_banded(BandedSystem(n=n, kl=3, ku=3, rows=system.rows, rhs=rhs))
    assert got == pytest.approx(x, rel=1e-11, abs=1e-11)


def test_banded_requires_pivoting():
    # zero leading diagonal entry is only solvable through the row swap
    rows = np.array(
        [
            [0.0, 0.0, 1.0],
            [1.0, 2.0, 1.0],
            [1.0, 3.0, 0.0],
        ]
    )
    system = BandedSystem(n=3, kl=1, ku=1, rows=rows, rhs=np.array([1.0, 4.0, 5.0]))
    want = np.linalg.solve(band_to_dense(system), system.rhs)
    assert solve_banded(system) == pytest.approx(want, rel=1e-13)


def test_banded_triangular_bands():
    rng = np.random.default_rng(31)
    for kl, ku in ((0, 2), (2, 0)):
        n = 10
        rows = rng.uniform(0.5, 1.5, size=(n, kl + ku + 1))
        for r in range(n):
            for j in range(kl + ku + 1):
                if not 0 <= r - kl + j < n:
                    rows[r, j] = 0.0
        system = BandedSystem(n=n, kl=kl, ku=ku, rows=rows, rhs=rng.standard_normal(n))
        want = np.linalg.solve(band_to_dense(system), system.rhs)
        assert solve_banded(system) == pytest.approx(want, rel=1e-11, abs=1e-12)


def test_banded_single_equation():
    system = BandedSystem(
        n=1, kl=0, ku=0, rows=np.array([[5.0]]), rhs=np.array([10.0])
    )
    assert solve_banded(system) == pytest.approx([2.0])


def test_banded_detects_singularity():
    # dense rows 1 and 2 both read [0, 2, 4]: rank deficient
    rows = np.array(
        [
            [0.0, 1.0, 2.0],
            [0.0, 2.0, 4.0],
            [2.0, 4.0, 0.0],
        ]
    )
    system = BandedSystem(n=3, kl=1, ku=1, rows=rows, rhs=np.ones(3))
    assert abs(np.linalg.det(band_to_dense(system))) < 1e-14
    with pytest.raises(SingularSystemError):
        solve_banded(system)
    with pytest.raises(SingularSystemError):
        solve_banded(
            BandedSystem(n=2, kl=1, ku=1, rows=np.zeros((2, 3)), rhs=np.ones(2))
        )


def test_banded_shape_validation():
    with pytest.raises(ValidationError):
        solve_banded(BandedSystem(n=3, kl=1, ku=1, rows=np.zeros((3, 4)), rhs=np.ones(3)))
    with pytest.raises(ValidationError):
        solve_banded(BandedSystem(n=3, kl=1, ku=1, rows=np.zeros((3, 3)), rhs=np.ones(2)))
    with pytest.raises(ValidationError):
        solve_banded(BandedSystem(n=0, kl=1, ku=1, rows=np.zeros((0, 3)), rhs=np.ones(0)))
    bad = np.ones((3, 3))
    bad[1, 1] = np.inf
    with pytest.raises(ValidationError):
        solve_banded(BandedSystem(n=3, kl=1, ku=1, rows=bad, rhs=np.ones(3)))
