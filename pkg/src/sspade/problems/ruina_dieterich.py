"""Frictional relaxation initial-value problem with a finite critical time.

f' = b - f^(1-m), f(0) = f0 (defaults b = 0.526, m = 3/2, f0 = 0.5).  The
solution decreases and vanishes at a finite t_c with a 2/3-power contact;
the series about t = 0 diverges, which is what the corrected approximants
repair.  Time as a function of f has a closed form (the equation is
separable), used both for the reference values and as an independent check
on the adaptive integration.
"""
from __future__ import annotations

import functools
import math

import numpy as np
from scipy.integrate import quad, solve_ivp
from scipy.optimize import brentq

from ..corrected import CorrectedApproximant, build
from ..errors import SolverError
from ..rootapprox import NestedRootApproximant, RootLevel, RootMixture
from ..series import GeneralizedSeries, power, taylor_from_ode
from ._base import ProblemDefinition, ReferenceSolution

B_DRIVE = 0.526
M_EXP = 1.5
F0 = 0.5

SERIES_ORDER = 10

# Taylor coefficients of the solution at published precision
SERIES_COEFFS_REF = (0.5, -0.888214, -0.628062, -0.853924, -1.51297,
                     -3.06015, -6.70249, -15.4836, -37.1618, -91.7923,
                     -231.875)

T_C_REF = 0.329956

CORRECTION_COEFFS_REF = (1.0, 0.244047, 0.257547, 0.436291, 0.884281,
                         1.96929, 4.64878, 11.4182, 28.8636, 74.5732, 196.0)

PADE55_REF = {"num": (1.0, -6.89716, 16.4086, -15.5576, 4.88054, -0.15572),
              "den": (1.0, -7.14121, 17.8938, -18.5216, 7.02358, -0.560998)}

EXACT_REF = {0.05: 0.453902, 0.1: 0.403853, 0.2: 0.286184, 0.25: 0.212307,
             0.3: 0.114745, 0.32: 0.0567535}

TABLE_T = (0.05, 0.1, 0.2, 0.25, 0.3, 0.32)


def small_series(order: int = SERIES_ORDER, b: float = B_DRIVE,
                 m: float = M_EXP, f0: float = F0) -> GeneralizedSeries:
    return taylor_from_ode(lambda f: b - power(f, 1.0 - m), f0, order)


def _residual(f: float, fp: float, fpp: float, t: float) -> float:
    return fp - B_DRIVE + f ** (1.0 - M_EXP)


def ruina_dieterich_problem(b: float = B_DRIVE, m: float = M_EXP,
                            f0: float = F0) -> ProblemDefinition:
    if f0 <= 0:
        raise SolverError(f"initial value must be positive, got {f0}")
    return ProblemDefinition(
        name="ruina-dieterich",
        residual=lambda f, fp, fpp, t: fp - b + f ** (1.0 - m),
        small_series=small_series(SERIES_ORDER, b, m, f0),
        large_asymptote=None,
        domain=(0.0, critical_time(b, f0, m)),
        boundary=((0.0, f0),),
    )


# ----------------------------------------------------------------------------
# closed-form time-of-level map (independent oracle for the integration)
# ----------------------------------------------------------------------------
def time_of_level(f: float, b: float = B_DRIVE, f0: float = F0) -> float:
    """t at which the solution first reaches level f (m = 3/2 closed form).

    From dt/df = 1/(b - f^(-1/2)) with u = sqrt(f):
    t(f) = [-u^2/b - 2u/b^2 - (2/b^3) log(1 - b u)] evaluated f0 -> f.
    """
    if not 0.0 <= f <= f0:
        raise ValueError(f"level must lie in [0, {f0}]")

    def anti(u: float) -> float:
        return -u * u / b - 2.0 * u / (b * b) \
            - 2.0 / b ** 3 * math.log1p(-b * u)

    # dt/du = -2u^2/(1 - bu) with u decreasing from sqrt(f0)
    return anti(math.sqrt(f0)) - anti(math.sqrt(f))


def critical_time(b: float = B_DRIVE, f0: float = F0,
                  m: float = M_EXP) -> float:
    """t_c, the time at which the solution vanishes.

    Closed form for m = 3/2, adaptive quadrature of the separable integral
    otherwise.
    """
    if m == M_EXP:
        return time_of_level(0.0, b, f0)
    val, _ = quad(lambda f: 1.0 / (f ** (1.0 - m) - b), 0.0, f0,
                  epsabs=1e-14, epsrel=1e-12)
    return val


def irr_root(b: float = B_DRIVE, f0: float = F0) -> NestedRootApproximant:
    """f0 (1 - t/t_c)^(2/3): correct endpoints and contact exponent."""
    t_c = critical_time(b, f0)
    return NestedRootApproximant(f0, 0.0, (RootLevel(-1.0 / t_c, 1.0, 2.0 / 3.0),),
                                 domain=(0.0, t_c * (1 - 1e-12)))


@functools.lru_cache(maxsize=None)
def corrected_family() -> dict[str, CorrectedApproximant]:
    """Corrected approximants of orders 4, 6, 8, 10, fully regenerated."""
    irr = irr_root()
    out = {}
    for n in (2, 3, 4, 5):
        label = f"f{2 * n}*"
        out[label] = build(small_series(2 * n), irr, n, n, label=label)
    return out


# ----------------------------------------------------------------------------
# reference solution: adaptive integration, inverse-map tail below f = 0.05
# ----------------------------------------------------------------------------
_F_SWITCH = 0.05


@functools.lru_cache(maxsize=None)
def _solve_reference():
    hit = lambda t, y: y[0] - _F_SWITCH
    hit.terminal = True
    sol = solve_ivp(lambda t, y: [B_DRIVE - max(y[0], 1e-300) ** (1.0 - M_EXP)],
                    [0.0, 1.0], [F0], method="DOP853", rtol=1e-12, atol=1e-14,
                    events=hit, dense_output=True)
    if sol.status != 1:
        raise SolverError("integration never reached the switch level")
    t_switch = float(sol.t_events[0][0])
    # remaining time from the separable closed form, cross-checked by
    # adaptive quadrature of the same integrand
    t_c_closed = critical_time()
    tail_quad, err = quad(
        lambda f: math.sqrt(f) / (1.0 - B_DRIVE * math.sqrt(f)),
        0.0, _F_SWITCH, epsabs=1e-14, epsrel=1e-12)
    t_c_event = t_switch + tail_quad
    if abs(t_c_event - t_c_closed) > 1e-9:
        raise SolverError(
            f"event-located t_c {t_c_event} disagrees with the closed form "
            f"{t_c_closed}")
    return sol, t_switch, t_c_event


def _reference_eval(t: float) -> float:
    sol, t_switch, t_c = _solve_reference()
    if t < 0:
        raise ValueError("t must be non-negative")
    if t <= t_switch:
        return float(sol.sol(t)[0])
    if t >= t_c:
        return 0.0
    return brentq(lambda f: time_of_level(f) - t, 0.0, _F_SWITCH,
                  xtol=1e-15, rtol=8.9e-16)


def located_critical_time() -> float:
    return _solve_reference()[2]


def reference(grid=TABLE_T) -> ReferenceSolution:
    sol, t_switch, t_c = _solve_reference()
    grid = tuple(float(t) for t in grid)
    values = tuple(_reference_eval(t) for t in grid)
    meta = {
        "method": "DOP853 rtol=1e-12 to f=0.05, inverse map below",
        "critical_time": t_c,
        "critical_time_closed_form": critical_time(),
        "switch_time": t_switch,
    }
    return ReferenceSolution(grid, values, meta, _reference_eval)


def sup_deviation(approx, n_points: int = 10000) -> float:
    """sup over [0, t_c] of |reference - approximant| on a uniform grid."""
    _, _, t_c = _solve_reference()
    # stay a hair inside the endpoint: both curves vanish continuously there
    ts = np.linspace(0.0, t_c * (1.0 - 1e-12), n_points)
    fn = approx.evaluate if hasattr(approx, "evaluate") else approx
    worst = 0.0
    for t in ts:
        worst = max(worst, abs(_reference_eval(float(t)) - fn(float(t))))
    return worst
