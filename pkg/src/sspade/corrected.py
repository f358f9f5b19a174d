"""Product approximants: an irrational root factor times a rational correction.

The correcting series is the exact truncated quotient of the target expansion
by the root factor's own expansion; its rational fit multiplies the root
factor back, so the product reproduces the target series through the fit
order while keeping the root factor's large-x behaviour.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import InconsistentFactorError
from .pade import PadeApproximant, from_series
from .rootapprox import NestedRootApproximant, RootMixture, as_mixture
from .series import AsymptoticForm, GeneralizedSeries, divide, multiply


@dataclass(frozen=True)
class CorrectedApproximant:
    """f(x) = irr(x) * pade(x)."""

    irr: RootMixture
    pade: PadeApproximant
    label: str

    def __post_init__(self):
        if not self.label:
            raise ValueError("label must be non-empty")

    def evaluate(self, x: float) -> float:
        return self.irr.evaluate(x) * self.pade.evaluate(x)

    __call__ = evaluate

    def eval012(self, x: float) -> tuple[float, float, float]:
        a0, a1, a2 = self.irr.eval012(x)
        b0, b1, b2 = self.pade.eval012(x)
        return a0 * b0, a1 * b0 + a0 * b1, a2 * b0 + 2 * a1 * b1 + a0 * b2

    def expand_small(self, order: int, step: float) -> GeneralizedSeries:
        irr_part = self.irr.expand_small(order, step)
        pade_part = self.pade.expand(order)
        return multiply(irr_part, pade_part).truncated(order)

    def to_json(self) -> dict:
        return {"irr": self.irr.to_json(), "pade": self.pade.to_json(),
                "label": self.label}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @staticmethod
    def from_json(obj: dict) -> "CorrectedApproximant":
        return CorrectedApproximant(RootMixture.from_json(obj["irr"]),
                                    PadeApproximant.from_json(obj["pade"]),
                                    obj["label"])


def correcting_series(f_small: GeneralizedSeries,
                      irr: NestedRootApproximant | RootMixture,
                      order: int) -> GeneralizedSeries:
    """Quotient of the target series by the root factor's expansion.

    The leading coefficient must come out 1 (the factor reproduces the
    series' leading behaviour); a mismatch beyond 1e-6 is an error.
    """
    irr = as_mixture(irr)
    irr_exp = irr.expand_small(order, f_small.step)
    c = divide(f_small.truncated(order), irr_exp)
    mismatch = abs(c.amplitude - 1.0)
    if mismatch > 1e-6 or abs(c.alpha) > 1e-12:
        raise InconsistentFactorError(
            f"irrational factor leading term off by {mismatch:.3e} "
            f"(alpha {c.alpha:+.3e})")
    if mismatch > 1e-10:
        raise InconsistentFactorError(
            f"irrational factor leading coefficient {c.amplitude} != 1")
    return GeneralizedSeries(1.0, 0.0, c.step, c.coeffs)


def build(f_small: GeneralizedSeries,
          irr: NestedRootApproximant | RootMixture,
          m: int, n: int,
          infinity_limit: float | None = None,
          label: str = "f*") -> CorrectedApproximant:
    """Assemble the product approximant from a series and a root factor."""
    irr = as_mixture(irr)
    order = m + n if infinity_limit is None else m + n - 1
    c = correcting_series(f_small, irr, max(order, 1))
    p = from_series(c, m, n, infinity_limit)
    return CorrectedApproximant(irr, p, label)


@dataclass(frozen=True)
class AsymptoticsReport:
    """Two-sided consistency report for a corrected approximant."""

    small_deviations: tuple[float, ...]   # per-order relative deviation
    small_pass: bool
    large_exponent: float
    large_exponent_target: float
    large_amplitude: float
    large_amplitude_target: float
    large_pass: bool
    tol: float

    @property
    def ok(self) -> bool:
        return self.small_pass and self.large_pass


def verify_asymptotics(ca: CorrectedApproximant,
                       f_small: GeneralizedSeries,
                       large: AsymptoticForm,
                       tol: float) -> AsymptoticsReport:
    """Check the product against both asymptotic sides.

    Small side: re-expansion deviation per order against ``f_small``.
    Large side: log-log slope and amplitude over x in [1e4, 1e6] (20 points)
    against the leading asymptote term, compared in magnitude.
    """
    order = min(f_small.order, ca.pade.m + ca.pade.n)
    re_exp = ca.expand_small(order, f_small.step)
    offset = round((f_small.alpha - re_exp.alpha) / re_exp.step)
    devs = []
    scale_ref = max(abs(c) for c in f_small.raw_coeffs())
    for k in range(order + 1):
        want = f_small.coefficient(k)
        got = re_exp.coefficient(k + offset)
        devs.append(abs(got - want) / max(abs(want), scale_ref * 1e-3))
    small_pass = all(d <= tol for d in devs)

    xs = np.geomspace(1e4, 1e6, 20)
    ys = np.array([abs(ca.evaluate(float(x))) for x in xs])
    slope, intercept = np.polyfit(np.log(xs), np.log(ys), 1)
    b_target, beta_target = large.terms[0]
    amp = math.exp(intercept)
    large_pass = (abs(slope - beta_target) <= tol * max(1.0, abs(beta_target))
                  and abs(amp - abs(b_target)) <= tol * abs(b_target))
    return AsymptoticsReport(tuple(devs), small_pass, slope, beta_target,
                             amp, abs(b_target), large_pass, tol)
