"""Benchmark problem definitions for the coupled Burgers system.

The governing equations are

    U_t - U_xx + k1*U*U_x + k2*(U*V)_x = 0
    V_t - V_xx + k1*V*V_x + k3*(U*V)_x = 0

on an interval with Dirichlet boundary data. Three standard test setups are
provided: a decaying sine pair with a known closed-form solution, a tanh
traveling-wave pair, and a split sine pulse pair with no closed form.
"""

import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from .exceptions import ValidationError


@dataclass(frozen=True, eq=False)
class ProblemSpec:
    """A complete problem instance.

    ``f`` and ``g`` are the initial profiles of U and V, with optional
    analytic derivatives ``df`` and ``dg`` used by the initial fit. The
    boundary functions ``f1, f2`` (U at the left and right end) and
    ``g1, g2`` (V likewise) take the time only. ``exact_u`` and ``exact_v``
    are callables of ``(x, t)`` when a closed-form solution is attached.
    """

    k1: float
    k2: float
    k3: float
    a: float
    b: float
    f: Callable
    g: Callable
    f1: Callable
    f2: Callable
    g1: Callable
    g2: Callable
    df: Callable | None = None
    dg: Callable | None = None
    exact_u: Callable | None = None
    exact_v: Callable | None = None


@dataclass(frozen=True)
class TravelingWaveParams:
    """Amplitude offset and wave parameter of the tanh traveling-wave pair."""

    a0: float
    A: float


def _zero(t: float) -> float:
    return 0.0


def problem1(k1: float = -2.0, k2: float = 1.0, k3: float = 1.0) -> ProblemSpec:
    """Decaying sine pair on [-pi, pi] with homogeneous boundaries.

    For the canonical constants (k1 = -2, k2 = k3 = 1) the convection and
    coupling terms cancel along U = V and ``exp(-t)*sin(x)`` solves both
    equations exactly; the closed form is attached only when the supplied
    constants keep that cancellation (k1 = -2*k2 = -2*k3). Other choices are
    accepted for qualitative parameter sweeps and carry no exact solution.
    """

    def exact(x, t):
        return np.exp(-t) * np.sin(x)

    attach = k1 == -2.0 * k2 and k1 == -2.0 * k3
    return ProblemSpec(
        k1=float(k1),
        k2=float(k2),
        k3=float(k3),
        a=-math.pi,
        b=math.pi,
        f=np.sin,
        g=np.sin,
        df=np.cos,
        dg=np.cos,
        f1=_zero,
        f2=_zero,
        g1=_zero,
        g2=_zero,
        exact_u=exact if attach else None,
        exact_v=exact if attach else None,
    )


def traveling_wave_params(k2: float, k3: float, a0: float = 0.05) -> TravelingWaveParams:
    """Wave parameter for the tanh pair; rejects the degenerate constants."""
    if 2.0 * k2 == 1.0:
        raise ValidationError("traveling wave undefined for 2*k2 = 1")
    if 4.0 * k2 * k3 == 1.0:
        raise ValidationError("traveling wave undefined for 4*k2*k3 = 1")
    wave = 0.5 * a0 * (4.0 * k2 * k3 - 1.0) / (2.0 * k2 - 1.0)
    return TravelingWaveParams(a0=a0, A=wave)


def problem2(k2: float, k3: float) -> ProblemSpec:
    """Tanh traveling-wave pair on [0, 1] with k1 fixed at 2.

    Initial and boundary data are extracted from the closed-form pair, which
    is attached as the reference solution. Note that the pair is a reference
    profile rather than a true solution of the system: for k1 = 2 its PDE
    residual does not vanish (see the package README), though it is small for
    the usual parameter choices.
    """
    wave = traveling_wave_params(k2, k3)
    a0, A = wave.a0, wave.A
    ratio = (2.0 * k2 - 1.0) / (4.0 * k2 * k3 - 1.0)
    shift = a0 * (2.0 * k3 - 1.0) / (2.0 * k2 - 1.0)

    def exact_u(x, t):
        return a0 - 2.0 * A * ratio * np.tanh(A * (x - 2.0 * A * t))

    def exact_v(x, t):
        return shift - 2.0 * A * ratio * np.tanh(A * (x - 2.0 * A * t))

    def slope(x):
        sech = 1.0 / np.cosh(A * x)
        return -2.0 * A * A * ratio * sech * sech

    return ProblemSpec(
        k1=2.0,
        k2=float(k2),
        k3=float(k3),
        a=0.0,
        b=1.0,
        f=lambda x: exact_u(x, 0.0),
        g=lambda x: exact_v(x, 0.0),
        df=slope,
        dg=slope,
        f1=lambda t: float(exact_u(0.0, t)),
        f2=lambda t: float(exact_u(1.0, t)),
        g1=lambda t: float(exact_v(0.0, t)),
        g2=lambda t: float(exact_v(1.0, t)),
        exact_u=exact_u,
        exact_v=exact_v,
    )


def problem3(k1: float, k2: float, k3: float) -> ProblemSpec:
    """Split sine pulses on [0, 1]: U lives on the left half, V on the right.

    Both profiles vanish at the junction x = 0.5 and at the boundaries, the
    boundary data is identically zero, and no exact solution is known.
    """
    two_pi = 2.0 * math.pi

    def f(x):
        x = np.asarray(x, dtype=float)
        return np.where(x <= 0.5, np.sin(two_pi * x), 0.0)

    def g(x):
        x = np.asarray(x, dtype=float)
        return np.where(x <= 0.5, 0.0, -np.sin(two_pi * x))

    def df(x):
        x = np.asarray(x, dtype=float)
        return np.where(x <= 0.5, two_pi * np.cos(two_pi * x), 0.0)

    def dg(x):
        x = np.asarray(x, dtype=float)
        return np.where(x <= 0.5, 0.0, -two_pi * np.cos(two_pi * x))

    return ProblemSpec(
        k1=float(k1),
        k2=float(k2),
        k3=float(k3),
        a=0.0,
        b=1.0,
        f=f,
        g=g,
        df=df,
        dg=dg,
        f1=_zero,
        f2=_zero,
        g1=_zero,
        g2=_zero,
    )
