"""Radial vortex-profile boundary-value problem.

f'' + f'/r - f/r^2 + f - f^3 = 0, f(0) = 0, f(infinity) = 1.  The small-r
expansion runs in powers of r^2 with slope constant c; the large-r expansion
descends in inverse powers of r^2.

The product approximant for this case uses amplitude and rational-correction
coefficients pinned at their published precision (*_REF): the calibration
recipe behind them is not reconstructible from the other published inputs,
so they are carried as fixtures, while the generic pipeline remains available
(see build_regenerated).
"""
from __future__ import annotations

import functools
import math

import numpy as np
from scipy.integrate import solve_ivp

from ..corrected import CorrectedApproximant, build
from ..errors import SolverError
from ..pade import PadeApproximant
from ..rootapprox import NestedRootApproximant, RootLevel, RootMixture
from ..series import AsymptoticForm, GeneralizedSeries, make_series
from ._base import ProblemDefinition, ReferenceSolution

C_SLOPE = 0.58319
A_ROOT_REF = 0.0163972

PADE22_REF = {"num": (1.0, 0.0674195, 0.000899209),
              "den": (1.0, 0.184221, 0.00409531)}

LARGE_TERMS = ((1.0, 0.0), (-0.5, -2.0), (-9.0 / 8.0, -4.0),
               (-161.0 / 16.0, -6.0))

# high-accuracy profile data tabulated alongside the problem in the
# literature; the in-repo solver agrees with it to ~4e-3 (see metadata)
PROFILE_DATA_REF = {0.1: 0.05825, 1.0: 0.522, 2.0: 0.807, 3.0: 0.919,
                    4.0: 0.962, 5.0: 0.978, 6.0: 0.987, 7.0: 0.991}

TABLE_R = (0.1, 1.0, 2.0, 3.0, 5.0, 7.0)


def small_coefficients(c: float) -> tuple[float, ...]:
    return (1.0,
            -1.0 / 8.0,
            (1.0 + 8.0 * c * c) / 192.0,
            -(1.0 + 80.0 * c * c) / 9216.0,
            (1.0 + 656.0 * c * c + 1152.0 * c ** 4) / 737280.0)


def small_series(c: float = C_SLOPE) -> GeneralizedSeries:
    return make_series(c, 1.0, 2.0, small_coefficients(c))


def large_asymptote() -> AsymptoticForm:
    return AsymptoticForm(LARGE_TERMS)


def _residual(f: float, fp: float, fpp: float, r: float) -> float:
    return fpp + fp / r - f / (r * r) + f - f ** 3


def nls_problem(c: float = C_SLOPE) -> ProblemDefinition:
    if c <= 0:
        raise ValueError(f"slope constant must be positive, got {c}")
    return ProblemDefinition(
        name="nls-vortex",
        residual=_residual,
        small_series=small_series(c),
        large_asymptote=large_asymptote(),
        domain=(0.0, math.inf),
        boundary=((0.0, 0.0), (math.inf, 1.0)),
    )


def irr_root(c: float = C_SLOPE, a: float = A_ROOT_REF) -> NestedRootApproximant:
    """c r (1 + a r^2)^(-1/2): the right r -> 0 and r -> infinity shapes."""
    return NestedRootApproximant(c, 1.0, (RootLevel(a, 2.0, -0.5),))


@functools.lru_cache(maxsize=None)
def f4_star() -> CorrectedApproximant:
    """Product approximant with the pinned rational-correction coefficients."""
    irr = RootMixture(((1.0, irr_root()),))
    pade = PadeApproximant(2.0, PADE22_REF["num"], PADE22_REF["den"])
    return CorrectedApproximant(irr, pade, "f4*")


def build_regenerated() -> CorrectedApproximant:
    """Same construction run through the generic pipeline.

    The limit at infinity pins f(inf) = 1 exactly; coefficients come out
    within ~2% of the pinned ones and the defect within ~1.5e-3.
    """
    limit = math.sqrt(A_ROOT_REF) / C_SLOPE
    return build(small_series(), irr_root(), 2, 2, infinity_limit=limit,
                 label="f4* (regenerated)")


# ----------------------------------------------------------------------------
# reference solution: bisected slope shooting, asymptotic tail beyond r = 14
# ----------------------------------------------------------------------------
# series start at 0.05 (series truncation ~1e-16 there); over/undershoot of a
# 1-ulp slope error is visible well before r = 28
_R0, _R_SWITCH, _R_FAR = 0.05, 14.0, 28.0


def _rhs(r, y):
    f, fp = y
    return [fp, -fp / r + f / (r * r) - f + f ** 3]


def _tail_value(r: float) -> float:
    return float(sum(b * r ** e for b, e in LARGE_TERMS))


def _start_state(c: float) -> list[float]:
    a = small_coefficients(c)
    r = _R0
    f = c * r * sum(an * r ** (2 * n) for n, an in enumerate(a))
    fp = c * sum((2 * n + 1) * an * r ** (2 * n) for n, an in enumerate(a))
    return [f, fp]


def _shoot(c: float, rmax: float, dense: bool = False):
    crossed = lambda r, y: y[0] - 1.02
    crossed.terminal = True
    stalled = lambda r, y: y[1]
    stalled.terminal = True
    return solve_ivp(_rhs, [_R0, rmax], _start_state(c), method="DOP853",
                     rtol=1e-12, atol=1e-14, events=[crossed, stalled],
                     dense_output=dense)


def _classify(sol) -> int:
    if sol.status == 1:
        return 1 if len(sol.t_events[0]) else -1   # overshoot vs undershoot
    return 0


@functools.lru_cache(maxsize=None)
def _solve_reference():
    lo, hi = 0.55, 0.62
    if _classify(_shoot(lo, _R_FAR)) != -1 or _classify(_shoot(hi, _R_FAR)) != 1:
        raise SolverError("slope bracket does not separate over/undershoot")
    while True:
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:   # bracket is one ulp wide
            break
        if _classify(_shoot(mid, _R_FAR)) > 0:
            hi = mid
        else:
            lo = mid
    c_star = lo
    sol = _shoot(c_star, _R_SWITCH, dense=True)
    if sol.status != 0:
        raise SolverError("converged slope no longer integrates to the switch point")
    mismatch = float(sol.sol(_R_SWITCH)[0] - _tail_value(_R_SWITCH))
    return c_star, sol, mismatch


def _reference_eval(r: float) -> float:
    c_star, sol, _ = _solve_reference()
    if r < _R0:
        return small_series(c_star).evaluate(r) if r > 0 else 0.0
    if r <= _R_SWITCH:
        return float(sol.sol(r)[0])
    return _tail_value(r)


def reference(grid=TABLE_R) -> ReferenceSolution:
    c_star, sol, mismatch = _solve_reference()
    grid = tuple(float(r) for r in grid)
    values = tuple(_reference_eval(r) for r in grid)
    meta = {
        "method": "slope shooting (bisection to 1 ulp), DOP853, rtol=1e-12",
        "shooting_parameter": c_star,
        "tail_switch_radius": _R_SWITCH,
        "tail_match_residual": mismatch,
        "profile_data_max_diff": max(
            abs(_reference_eval(r) - v) for r, v in PROFILE_DATA_REF.items()),
    }
    return ReferenceSolution(grid, values, meta, _reference_eval)
