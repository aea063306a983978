"""Direct solvers for tridiagonal and narrow-banded linear systems.

The initial fit produces strictly diagonally dominant tridiagonal systems and
the time stepper produces interleaved systems of bandwidth (3, 3) that carry
no dominance guarantee, so the banded solver pivots partially within the band.
Both elimination kernels are compiled with numba; a full run performs one
banded solve per time step and the solve dominates the step cost.
"""

from dataclasses import dataclass

import numpy as np
from numba import njit

from .exceptions import SingularSystemError, ValidationError

# A pivot is declared unusable when it falls below this fraction of the
# largest entry it is measured against.
_PIVOT_RTOL = 1e-14


@dataclass(frozen=True, eq=False)
class TridiagonalSystem:
    """Tridiagonal system; ``diag`` has length n, off-diagonals length n - 1."""

    lower: np.ndarray
    diag: np.ndarray
    upper: np.ndarray
    rhs: np.ndarray


@dataclass(frozen=True, eq=False)
class BandedSystem:
    """Band-stored square system.

    ``rows`` has shape ``(n, kl + ku + 1)``; entry ``rows[r, j]`` holds matrix
    element ``A[r, r - kl + j]``. Slots that would map outside the matrix are
    ignored and should be zero.
    """

    n: int
    kl: int
    ku: int
    rows: np.ndarray
    rhs: np.ndarray


@njit(cache=True)
def _thomas_core(lower, diag, upper, rhs, out):
    n = diag.shape[0]
    cp = np.empty(n)
    dp = np.empty(n)
    scale = abs(diag[0])
    if n > 1 and abs(upper[0]) > scale:
        scale = abs(upper[0])
    pivot = diag[0]
    if scale == 0.0 or abs(pivot) <= _PIVOT_RTOL * scale:
        return 1
    if n > 1:
        cp[0] = upper[0] / pivot
    dp[0] = rhs[0] / pivot
    for i in range(1, n):
        scale = abs(diag[i])
        if abs(lower[i - 1]) > scale:
            scale = abs(lower[i - 1])
        if i < n - 1 and abs(upper[i]) > scale:
            scale = abs(upper[i])
        pivot = diag[i] - lower[i - 1] * cp[i - 1]
        if scale == 0.0 or abs(pivot) <= _PIVOT_RTOL * scale:
            return i + 1
        if i < n - 1:
            cp[i] = upper[i] / pivot
        dp[i] = (rhs[i] - lower[i - 1] * dp[i - 1]) / pivot
    out[n - 1] = dp[n - 1]
    for i in range(n - 2, -1, -1):
        out[i] = dp[i] - cp[i] * out[i + 1]
    return 0


@njit(cache=True)
def _banded_core(work, rhs, n, kl, ku, out):
    # work has width kl + (kl + ku) + 1: the extra kl columns hold the fill-in
    # that row swaps push into the upper band. work[r, j] is column r - kl + j.
    for k in range(n):
        rmax = min(k + kl, n - 1)
        ip = k
        pivot = -1.0
        scale = 0.0
        for r in range(k, rmax + 1):
            v = abs(work[r, k - r + kl])
            if v > pivot:
                pivot = v
                ip = r
            cmax = min(r + kl + ku, n - 1)
            for c in range(k, cmax + 1):
                av = abs(work[r, c - r + kl])
                if av > scale:
                    scale = av
        if scale == 0.0 or pivot <= _PIVOT_RTOL * scale:
            return k + 1
        cmax = min(k + kl + ku, n - 1)
        if ip != k:
            for c in range(k, cmax + 1):
                jk = c - k + kl
                ji = c - ip + kl
                tmp = work[k, jk]
                work[k, jk] = work[ip, ji]
                work[ip, ji] = tmp
            tmp = rhs[k]
            rhs[k] = rhs[ip]
            rhs[ip] = tmp
        for r in range(k + 1, rmax + 1):
            jr = k - r + kl
            factor = work[r, jr] / work[k, kl]
            if factor != 0.0:
                for c in range(k + 1, cmax + 1):
                    work[r, c - r + kl] -= factor * work[k, c - k + kl]
                rhs[r] -= factor * rhs[k]
            work[r, jr] = 0.0
    for k in range(n - 1, -1, -1):
        acc = rhs[k]
        cmax = min(k + kl + ku, n - 1)
        for c in range(k + 1, cmax + 1):
            acc -= work[k, c - k + kl] * out[c]
        out[k] = acc / work[k, kl]
    return 0


def solve_tridiagonal(system: TridiagonalSystem) -> np.ndarray:
    """Solve a tridiagonal system by single-sweep elimination.

    Raises
    ------
    SingularSystemError
        If an elimination pivot drops below 1e-14 of its row scale.
    ValidationError
        On inconsistent lengths or non-finite entries.
    """
    diag = np.ascontiguousarray(system.diag, dtype=np.float64)
    lower = np.ascontiguousarray(system.lower, dtype=np.float64)
    upper = np.ascontiguousarray(system.upper, dtype=np.float64)
    rhs = np.ascontiguousarray(system.rhs, dtype=np.float64)
    n = diag.shape[0]
    if n < 1:
        raise ValidationError("tridiagonal system needs at least one equation")
    if lower.shape[0] != n - 1 or upper.shape[0] != n - 1 or rhs.shape[0] != n:
        raise ValidationError(
            "inconsistent tridiagonal shapes: "
            f"diag {n}, lower {lower.shape[0]}, upper {upper.shape[0]}, rhs {rhs.shape[0]}"
        )
    for name, arr in (("lower", lower), ("diag", diag), ("upper", upper), ("rhs", rhs)):
        if not np.all(np.isfinite(arr)):
            raise ValidationError(f"non-finite entries in {name}")
    out = np.empty(n)
    status = _thomas_core(lower, diag, upper, rhs, out)
    if status:
        raise SingularSystemError(
            f"tridiagonal elimination stalled at row {status - 1}: pivot below tolerance"
        )
    return out


def solve_banded(system: BandedSystem) -> np.ndarray:
    """Solve a band-stored system by LU with partial pivoting inside the band.

    Pivoting is confined to the ``kl`` rows below the diagonal, so fill-in
    stays within ``kl + ku`` superdiagonals.

    Raises
    ------
    SingularSystemError
        If the best available pivot drops below 1e-14 of the active scale.
    ValidationError
        On inconsistent shapes or non-finite entries.
    """
    n, kl, ku = system.n, system.kl, system.ku
    if n < 1 or kl < 0 or ku < 0:
        raise ValidationError(f"bad banded dimensions: n={n}, kl={kl}, ku={ku}")
    rows = np.ascontiguousarray(system.rows, dtype=np.float64)
    rhs = np.array(system.rhs, dtype=np.float64)
    if rows.shape != (n, kl + ku + 1):
        raise ValidationError(
            f"band storage must have shape ({n}, {kl + ku + 1}), got {rows.shape}"
        )
    if rhs.shape != (n,):
        raise ValidationError(f"rhs must have shape ({n},), got {rhs.shape}")
    if not np.all(np.isfinite(rows)) or not np.all(np.isfinite(rhs)):
        raise ValidationError("non-finite entries in banded system")
    work = np.zeros((n, 2 * kl + ku + 1))
    work[:, : kl + ku + 1] = rows
    out = np.empty(n)
    status = _banded_core(work, rhs, n, kl, ku, out)
    if status:
        raise SingularSystemError(
            f"banded elimination stalled at step {status - 1}: pivot below tolerance"
        )
    return out
