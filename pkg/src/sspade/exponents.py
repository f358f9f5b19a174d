"""Large-argument growth exponent extracted from a small-argument expansion.

The logarithmic derivative beta(x) = d log f / d log x tends to the growth
exponent as x grows.  Its series is resummed by a diagonal rational fit
(optionally times a caller-supplied root factor) whose limit at infinity is
the estimate.  The fit is applied to 1 + (beta - beta(0)) so functions with
beta(0) = 0 need no special casing; rational inputs make high-order fit
tables singular, so the order falls back until the table is regular.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateTableError, InsufficientCoefficientsError
from .pade import from_series
from .rootapprox import NestedRootApproximant, RootMixture, as_mixture
from .series import GeneralizedSeries, _log_derivative_raw, divide


@dataclass(frozen=True)
class ExponentEstimate:
    beta: float
    diagnostics: tuple[tuple[int, float | None, str], ...]  # (order, limit, note)
    pade_n: int
    used_template: bool
    amplitude: float | None = None          # heuristic, may be None
    amplitude_method: str | None = None

    def to_json(self) -> dict:
        return {
            "beta": self.beta,
            "pade_n": self.pade_n,
            "used_template": self.used_template,
            "amplitude": self.amplitude,
            "amplitude_method": self.amplitude_method,
            "diagnostics": [{"order": n, "limit": l, "note": s}
                            for n, l, s in self.diagnostics],
        }


def _beta_shifted_series(f_small: GeneralizedSeries) -> GeneralizedSeries:
    """Series of 1 + (beta(x) - alpha) on the input grid."""
    q = _log_derivative_raw(f_small)
    q[0] = 1.0
    return GeneralizedSeries(1.0, 0.0, f_small.step, tuple(q))


def large_variable_exponent(f_small: GeneralizedSeries, pade_n: int,
                            irr_template: NestedRootApproximant | RootMixture |
                            None = None) -> ExponentEstimate:
    """Estimate the x -> infinity exponent of f from its small-x series.

    Diagnostics list the limit of every diagonal fit order up to ``pade_n``;
    the estimate comes from the highest order whose fit table is regular.
    """
    if pade_n < 1:
        raise ValueError("pade_n must be >= 1")
    if f_small.order < 2 * pade_n:
        raise InsufficientCoefficientsError(
            f"series order {f_small.order} < 2*N = {2 * pade_n}")
    alpha = f_small.alpha
    g = _beta_shifted_series(f_small)

    factor_value = 1.0
    if irr_template is not None:
        mix = as_mixture(irr_template)
        g = divide(g, mix.expand_small(g.order, g.step))
        g = GeneralizedSeries(1.0, 0.0, g.step, g.coeffs)
        vals = []
        for w, root in mix.components:
            d = root.degree_at_infinity()
            if abs(d) <= 1e-12:
                vals.append(w * root.asymptotic_large(1).terms[0][0])
            elif d < 0:
                vals.append(0.0)
            else:
                raise DegenerateTableError(
                    "template grows at infinity; beta would diverge")
        factor_value = sum(vals)

    if all(abs(c) < 1e-300 for c in g.coeffs[1:]):
        # pure power: beta is the prefactor exponent itself
        diag = ((0, alpha, "constant log-derivative"),)
        return ExponentEstimate(alpha, diag, pade_n, irr_template is not None,
                                f_small.amplitude, "exact-power")

    diagnostics = []
    beta = None
    best_n = 0
    for n in range(1, pade_n + 1):
        try:
            p = from_series(g, n, n)
        except DegenerateTableError as exc:
            diagnostics.append((n, None, f"degenerate: {exc}"))
            continue
        limit = p.limit_at_infinity()
        if not math.isfinite(limit):
            diagnostics.append((n, None, "non-finite limit"))
            continue
        est = alpha + factor_value * limit - 1.0
        diagnostics.append((n, est, "ok"))
        beta, best_n = est, n
    if beta is None:
        raise DegenerateTableError(
            "no regular diagonal fit up to the requested order")

    amplitude = None
    method = None
    gap = (beta - alpha) / f_small.step
    gap_i = round(gap)
    if abs(gap - gap_i) < 1e-6:
        # reducible case: a non-diagonal fit of f itself has the right growth
        n_den = (f_small.order - gap_i) // 2
        m_num = n_den + gap_i
        if n_den >= 0 and m_num >= 0 and m_num + n_den <= f_small.order \
                and (m_num + n_den) > 0:
            try:
                pf = from_series(
                    GeneralizedSeries(1.0, 0.0, f_small.step, f_small.coeffs),
                    m_num, n_den)
                lead = pf.num[-1] / pf.den[-1]
                amplitude = f_small.amplitude * lead
                method = "nondiagonal-rational-fit (heuristic)"
            except DegenerateTableError:
                pass
    return ExponentEstimate(beta, tuple(diagnostics), pade_n,
                            irr_template is not None, amplitude, method)
