"""Truncated generalized power series over a uniform fractional exponent grid.

A :class:`GeneralizedSeries` represents

    f(x) = amplitude * x**alpha * (1 + sum_{n>=1} c_n x**(n*step))

with the stored coefficient list ``(c_0, ..., c_K)`` normalized to ``c_0 = 1``.
All arithmetic is exact truncated-series arithmetic; nothing is fitted.
Values are immutable and freely shareable between threads.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .errors import (
    DivisionSingularityError,
    GridMismatchError,
    SeriesConstructionError,
    SingularInitialConditionError,
    SspadeError,
)

_GRID_RTOL = 1e-12


@dataclass(frozen=True)
class GeneralizedSeries:
    """Truncated expansion ``A * x**alpha * (1 + c_1 x**h + c_2 x**2h + ...)``.

    ``coeffs[0]`` is always 1 after construction.  The zero function is
    representable with ``amplitude == 0`` (produced only by arithmetic,
    never by :func:`make_series`).
    """

    amplitude: float
    alpha: float
    step: float
    coeffs: tuple[float, ...]

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return self.amplitude == 0.0

    def coefficient(self, n: int) -> float:
        """Raw coefficient of x**(alpha + n*step), amplitude included."""
        if n < 0 or n > self.order:
            return 0.0
        return self.amplitude * self.coeffs[n]

    def raw_coeffs(self) -> np.ndarray:
        return self.amplitude * np.asarray(self.coeffs, dtype=float)

    def truncated(self, order: int) -> "GeneralizedSeries":
        if order < 0:
            raise SeriesConstructionError("truncation order must be >= 0")
        if order >= self.order:
            return self
        return GeneralizedSeries(self.amplitude, self.alpha, self.step,
                                 self.coeffs[: order + 1])

    def evaluate(self, x: float) -> float:
        if x < 0:
            raise SeriesConstructionError("series evaluation requires x >= 0")
        if self.is_zero():
            return 0.0
        if x == 0.0:
            if self.alpha > 0:
                return 0.0
            if self.alpha == 0:
                return self.amplitude
            return math.copysign(math.inf, self.amplitude)
        y = x ** self.step
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * y + c
        return self.amplitude * x ** self.alpha * acc

    __call__ = evaluate

    # -- operator sugar (used heavily by ODE right-hand sides) ---------------
    def __mul__(self, other):
        if isinstance(other, GeneralizedSeries):
            return multiply(self, other)
        return scale(self, float(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, GeneralizedSeries):
            return divide(self, other)
        return scale(self, 1.0 / float(other))

    def __add__(self, other):
        if isinstance(other, GeneralizedSeries):
            return add(self, other)
        return add(self, _constant_like(float(other), self))

    __radd__ = __add__

    def __sub__(self, other):
        other = other if isinstance(other, GeneralizedSeries) \
            else _constant_like(float(other), self)
        return add(self, scale(other, -1.0))

    def __rsub__(self, other):
        return add(_constant_like(float(other), self), scale(self, -1.0))

    def __neg__(self):
        return scale(self, -1.0)

    def __pow__(self, p):
        return power(self, float(p))

    # -- serialization --------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "amplitude": self.amplitude,
            "alpha": self.alpha,
            "step": self.step,
            "coeffs": list(self.coeffs),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @staticmethod
    def from_json(obj: dict) -> "GeneralizedSeries":
        return make_series(obj["amplitude"], obj["alpha"], obj["step"],
                           obj["coeffs"])


@dataclass(frozen=True)
class AsymptoticForm:
    """Descending large-argument sum ``sum_n b_n x**beta_n``."""

    terms: tuple[tuple[float, float], ...]  # (amplitude, exponent)

    def __post_init__(self):
        if not self.terms:
            raise SeriesConstructionError("asymptotic form needs at least one term")
        exps = [e for _, e in self.terms]
        if any(e2 >= e1 for e1, e2 in zip(exps, exps[1:])):
            raise SeriesConstructionError("asymptotic exponents must strictly descend")
        if not all(math.isfinite(b) and math.isfinite(e) for b, e in self.terms):
            raise SeriesConstructionError("asymptotic terms must be finite")

    def evaluate(self, x: float) -> float:
        return sum(b * x ** e for b, e in self.terms)

    __call__ = evaluate

    def to_json(self) -> dict:
        return {"terms": [[b, e] for b, e in self.terms]}

    @staticmethod
    def from_json(obj: dict) -> "AsymptoticForm":
        return AsymptoticForm(tuple((float(b), float(e)) for b, e in obj["terms"]))


ZERO = GeneralizedSeries(0.0, 0.0, 1.0, (1.0,))


def make_series(amplitude: float, alpha: float, step: float,
                coeffs: Sequence[float]) -> GeneralizedSeries:
    """Build a normalized series, folding the leading coefficient into the amplitude."""
    if step <= 0 or not math.isfinite(step):
        raise SeriesConstructionError(f"step must be positive, got {step}")
    coeffs = [float(c) for c in coeffs]
    if not coeffs:
        raise SeriesConstructionError("coefficient list must be non-empty")
    if coeffs[0] == 0.0:
        raise SeriesConstructionError("leading coefficient must be nonzero")
    if amplitude == 0.0:
        raise SeriesConstructionError("amplitude must be nonzero")
    c0 = coeffs[0]
    return GeneralizedSeries(float(amplitude) * c0, float(alpha), float(step),
                             tuple(c / c0 for c in coeffs))


def monomial(amplitude: float, exponent: float, step: float) -> GeneralizedSeries:
    """Single exact term ``amplitude * x**exponent`` on the given grid."""
    return make_series(amplitude, exponent, step, [1.0])


def _constant_like(value: float, template: GeneralizedSeries) -> GeneralizedSeries:
    """Scalar, padded so it does not limit the partner's order."""
    if value == 0.0:
        return ZERO
    return GeneralizedSeries(value, 0.0, template.step,
                             (1.0,) + (0.0,) * template.order)


def _common_grid(a: GeneralizedSeries, b: GeneralizedSeries) -> tuple[float, int, int]:
    """Common refinement of two steps: returns (fine_step, stride_a, stride_b)."""
    if a.step == b.step:
        return a.step, 1, 1
    ratio = a.step / b.step
    frac = Fraction(ratio).limit_denominator(1000)
    p, q = frac.numerator, frac.denominator
    if p <= 0 or abs(ratio - p / q) > _GRID_RTOL * max(1.0, ratio):
        raise GridMismatchError(
            f"steps {a.step} and {b.step} have no common grid within tolerance")
    return a.step / p, p, q


def _on_fine_grid(s: GeneralizedSeries, stride: int) -> np.ndarray:
    out = np.zeros(s.order * stride + 1)
    out[::stride] = s.coeffs
    return out


def _renormalize(amplitude: float, alpha: float, step: float,
                 raw: np.ndarray) -> GeneralizedSeries:
    """Strip exactly-zero leading entries and renormalize to c0 = 1."""
    nz = np.nonzero(raw)[0]
    if len(nz) == 0:
        return ZERO
    lead = nz[0]
    raw = raw[lead:]
    return GeneralizedSeries(amplitude * raw[0], alpha + lead * step, step,
                             tuple(raw / raw[0]))


def scale(s: GeneralizedSeries, factor: float) -> GeneralizedSeries:
    if factor == 0.0 or s.is_zero():
        return ZERO
    return GeneralizedSeries(s.amplitude * factor, s.alpha, s.step, s.coeffs)


def add(a: GeneralizedSeries, b: GeneralizedSeries) -> GeneralizedSeries:
    """Sum on the common grid, truncated to the shorter certified order.

    Single-term operands (monomials, exact scalars) do not limit the order.
    """
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    fine, sa, sb = _common_grid(a, b)
    alpha0 = min(a.alpha, b.alpha)
    leads = []
    for s in (a, b):
        off = (s.alpha - alpha0) / fine
        lead = round(off)
        if abs(off - lead) > 1e-9:
            raise GridMismatchError(
                f"prefactor exponents {a.alpha} and {b.alpha} differ off-grid")
        leads.append(lead)
    ra, rb = a.amplitude * _on_fine_grid(a, sa), b.amplitude * _on_fine_grid(b, sb)
    tops = []
    for s, lead, arr in ((a, leads[0], ra), (b, leads[1], rb)):
        if s.order > 0:  # single-term series are exact
            tops.append(lead + len(arr) - 1)
    n = min(tops) if tops else max(leads[0] + len(ra), leads[1] + len(rb)) - 1
    out = np.zeros(n + 1)
    for lead, arr in zip(leads, (ra, rb)):
        m = min(len(arr), n + 1 - lead)
        if m > 0:
            out[lead:lead + m] += arr[:m]
    return _renormalize(1.0, alpha0, fine, out)


def multiply(a: GeneralizedSeries, b: GeneralizedSeries) -> GeneralizedSeries:
    """Cauchy product on the common grid.

    The stored coefficients are treated as exact, so the product carries the
    full attainable order (sum of the operands' top exponents); use
    :meth:`GeneralizedSeries.truncated` to cap it.
    """
    if a.is_zero() or b.is_zero():
        return ZERO
    fine, sa, sb = _common_grid(a, b)
    out = np.convolve(_on_fine_grid(a, sa), _on_fine_grid(b, sb))
    return GeneralizedSeries(a.amplitude * b.amplitude, a.alpha + b.alpha,
                             fine, tuple(out))


def divide(num: GeneralizedSeries, den: GeneralizedSeries) -> GeneralizedSeries:
    """Quotient through the smaller of the two certified orders.

    ``multiply(result, den)`` reproduces ``num`` through the result's order.
    """
    if den.is_zero():
        raise DivisionSingularityError("division by the zero series")
    if num.is_zero():
        return ZERO
    fine, sn, sd = _common_grid(num, den)
    cn, cd = _on_fine_grid(num, sn), _on_fine_grid(den, sd)
    if cd[0] == 0.0:
        raise DivisionSingularityError("denominator leading coefficient is zero")
    n_out = min(len(cn), len(cd)) - 1
    q = np.zeros(n_out + 1)
    for n in range(n_out + 1):
        s = cn[n] if n < len(cn) else 0.0
        for j in range(1, n + 1):
            if j < len(cd):
                s -= cd[j] * q[n - j]
        q[n] = s / cd[0]
    return _renormalize(num.amplitude / den.amplitude,
                        num.alpha - den.alpha, fine, q)


def _log_coeffs(c: np.ndarray) -> np.ndarray:
    """Coefficients of log(1 + u) where 1 + u has coefficients c, c[0] = 1."""
    n_max = len(c) - 1
    l = np.zeros(n_max + 1)
    for n in range(1, n_max + 1):
        s = c[n]
        for k in range(1, n):
            s -= (k / n) * l[k] * c[n - k]
        l[n] = s
    return l


def _exp_coeffs(t: np.ndarray) -> np.ndarray:
    """Coefficients of exp(T) for a series T with T[0] = 0."""
    n_max = len(t) - 1
    e = np.zeros(n_max + 1)
    e[0] = 1.0
    for n in range(1, n_max + 1):
        s = 0.0
        for k in range(1, n + 1):
            s += k * t[k] * e[n - k]
        e[n] = s / n
    return e


def power(s: GeneralizedSeries, p: float) -> GeneralizedSeries:
    """Real power via log/exp series composition, truncated at the input order."""
    if s.is_zero():
        raise SeriesConstructionError("cannot raise the zero series to a power")
    if p == 0.0:
        return GeneralizedSeries(1.0, 0.0, s.step, (1.0,) + (0.0,) * s.order)
    out = _exp_coeffs(p * _log_coeffs(np.asarray(s.coeffs)))
    if s.amplitude > 0:
        amp = s.amplitude ** p
    elif p == round(p):
        amp = float((-1) ** int(round(p))) * (-s.amplitude) ** p
    else:
        raise SeriesConstructionError("negative amplitude under a non-integer power")
    return GeneralizedSeries(amp, s.alpha * p, s.step, tuple(out))


def _log_derivative_raw(s: GeneralizedSeries) -> np.ndarray:
    """Correction series q of x d/dx log(1 + sum c_n x^{n h}), through order K."""
    c = np.asarray(s.coeffs)
    k = s.order
    num = c * s.step * np.arange(k + 1)
    q = np.zeros(k + 1)
    for n in range(1, k + 1):
        val = num[n]
        for j in range(1, n):
            val -= c[n - j] * q[j]
        q[n] = val
    return q


def log_derivative(s: GeneralizedSeries) -> GeneralizedSeries:
    """Series of beta(x) = d log f / d log x = alpha + x (log bracket)'.

    Returns the zero series when the input is a constant.
    """
    if s.is_zero():
        raise SeriesConstructionError("log-derivative of the zero series")
    q = _log_derivative_raw(s)
    q[0] = s.alpha
    return _renormalize(1.0, 0.0, s.step, q)


def taylor_from_ode(rhs: Callable[[GeneralizedSeries], GeneralizedSeries],
                    f0: float, order: int) -> GeneralizedSeries:
    """Taylor coefficients of f' = rhs(f), f(0) = f0, on the unit-step grid.

    ``rhs`` receives the current truncation of f as a series and must return
    the series of the right-hand side (the overloaded operators make this
    read like the scalar formula).
    """
    if order < 1:
        raise SeriesConstructionError("order must be >= 1")
    a = np.zeros(order + 1)
    a[0] = f0
    for n in range(order):
        f_n = _renormalize(1.0, 0.0, 1.0, a[: n + 1].copy())
        try:
            g = rhs(f_n)
        except SspadeError as exc:
            raise SingularInitialConditionError(
                f"right-hand side singular at f0={f0}: {exc}") from exc
        gn = _raw_coefficient(g, n)
        if not math.isfinite(gn):
            raise SingularInitialConditionError(
                f"right-hand side not finite at order {n}")
        a[n + 1] = gn / (n + 1)
    return _renormalize(1.0, 0.0, 1.0, a)


def _raw_coefficient(s: GeneralizedSeries, n: int) -> float:
    """Coefficient of x**n of a series whose alpha sits on the unit grid."""
    if s.is_zero():
        return 0.0
    pos = (n - s.alpha) / s.step
    k = round(pos)
    if abs(pos - k) > 1e-9:
        return 0.0
    return s.coefficient(k)
