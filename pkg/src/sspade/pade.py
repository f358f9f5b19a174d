"""Rational approximants in a fractional variable z = x**gamma.

Coefficients are determined from a :class:`~sspade.series.GeneralizedSeries`
by the accuracy-through-order linear system; a finite limit at infinity can be
imposed on diagonal approximants, in which case it replaces the highest-order
matching condition.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateTableError, InsufficientCoefficientsError
from .series import GeneralizedSeries

_PIVOT_TOL = 1e-13


def solve_partial_pivot(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Gaussian elimination with partial pivoting and an explicit pivot floor.

    Near-singular systems are reported (DegenerateTableError), never
    regularized.
    """
    a = np.array(a, dtype=float)
    b = np.array(b, dtype=float)
    n = a.shape[0]
    scale = np.abs(a).max() or 1.0
    for k in range(n):
        piv = k + int(np.argmax(np.abs(a[k:, k])))
        if abs(a[piv, k]) <= _PIVOT_TOL * scale:
            raise DegenerateTableError(
                f"pivot {a[piv, k]:.3e} below threshold at column {k}")
        if piv != k:
            a[[k, piv]] = a[[piv, k]]
            b[[k, piv]] = b[[piv, k]]
        factors = a[k + 1:, k] / a[k, k]
        a[k + 1:, k:] -= np.outer(factors, a[k, k:])
        b[k + 1:] -= factors * b[k]
    x = np.zeros(n)
    for k in range(n - 1, -1, -1):
        x[k] = (b[k] - a[k, k + 1:] @ x[k + 1:]) / a[k, k]
    return x


@dataclass(frozen=True)
class PadeApproximant:
    """num(z)/den(z) with z = x**gamma, den normalized to den[0] = 1."""

    gamma: float
    num: tuple[float, ...]
    den: tuple[float, ...]

    @property
    def m(self) -> int:
        return len(self.num) - 1

    @property
    def n(self) -> int:
        return len(self.den) - 1

    def _horner(self, coeffs, z):
        acc = 0.0
        for c in reversed(coeffs):
            acc = acc * z + c
        return acc

    def evaluate(self, x: float) -> float:
        z = x ** self.gamma
        nv = self._horner(self.num, z)
        dv = self._horner(self.den, z)
        if dv == 0.0:
            return math.copysign(math.inf, nv) if nv != 0.0 else math.nan
        return nv / dv

    __call__ = evaluate

    def eval012(self, x: float) -> tuple[float, float, float]:
        """Value and first two x-derivatives (exact rational differentiation)."""
        z = x ** self.gamma
        nv, dv = self._horner(self.num, z), self._horner(self.den, z)
        n1 = self._horner([i * c for i, c in enumerate(self.num)][1:], z)
        d1 = self._horner([i * c for i, c in enumerate(self.den)][1:], z)
        n2 = self._horner([i * (i - 1) * c for i, c in enumerate(self.num)][2:], z)
        d2 = self._horner([i * (i - 1) * c for i, c in enumerate(self.den)][2:], z)
        q = nv / dv
        q1 = (n1 - q * d1) / dv                      # dP/dz
        q2 = (n2 - q * d2 - 2 * q1 * d1) / dv        # d2P/dz2
        g = self.gamma
        zp = g * x ** (g - 1)
        zpp = g * (g - 1) * x ** (g - 2)
        return q, q1 * zp, q2 * zp * zp + q1 * zpp

    def limit_at_infinity(self) -> float:
        if self.m > self.n:
            return math.inf if self.num[-1] / self.den[-1] > 0 else -math.inf
        if self.m < self.n:
            return 0.0
        return self.num[-1] / self.den[-1]

    def find_poles(self, interval: tuple[float, float], samples: int = 1000) -> list[float]:
        """Real denominator roots inside ``interval`` (in x), by sign-change
        bracketing on a uniform z-grid plus bisection."""
        lo, hi = interval
        if not lo < hi:
            raise ValueError("interval must satisfy lo < hi")
        if samples < 2:
            raise ValueError("need at least 2 samples")
        zlo, zhi = lo ** self.gamma, hi ** self.gamma
        zs = np.linspace(zlo, zhi, samples)
        vals = np.array([self._horner(self.den, z) for z in zs])
        poles = []
        for z in zs[vals == 0.0]:
            poles.append(z)
        idx = np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)[0]
        for i in idx:
            a, b = zs[i], zs[i + 1]
            fa = self._horner(self.den, a)
            for _ in range(200):
                mid = 0.5 * (a + b)
                fm = self._horner(self.den, mid)
                if fm == 0.0 or (b - a) < 1e-12 * max(1.0, abs(mid)):
                    a = b = mid
                    break
                if (fm < 0) == (fa < 0):
                    a, fa = mid, fm
                else:
                    b = mid
            poles.append(0.5 * (a + b))
        return sorted(p ** (1.0 / self.gamma) for p in poles)

    def expand(self, order: int) -> GeneralizedSeries:
        """Re-expansion as a series in x on the step-gamma grid."""
        num = np.zeros(order + 1)
        num[: min(len(self.num), order + 1)] = self.num[: order + 1]
        den = np.asarray(self.den)
        c = np.zeros(order + 1)
        for k in range(order + 1):
            s = num[k]
            for j in range(1, k + 1):
                if j < len(den):
                    s -= den[j] * c[k - j]
            c[k] = s / den[0]
        nz = np.nonzero(c)[0]
        if len(nz) == 0:
            from .series import ZERO
            return ZERO
        lead = nz[0]
        c = c[lead:]
        return GeneralizedSeries(c[0], lead * self.gamma, self.gamma,
                                 tuple(c / c[0]))

    def to_json(self) -> dict:
        return {"gamma": self.gamma, "num": list(self.num), "den": list(self.den)}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @staticmethod
    def from_json(obj: dict) -> "PadeApproximant":
        den = [float(v) for v in obj["den"]]
        if den[0] != 1.0:
            den = [v / den[0] for v in den]
        return PadeApproximant(float(obj["gamma"]),
                               tuple(float(v) for v in obj["num"]), tuple(den))


def from_series(c: GeneralizedSeries, m: int, n: int,
                infinity_limit: float | None = None) -> PadeApproximant:
    """Fit num/den of degrees (m, n) in z = x**step to the series ``c``.

    Without ``infinity_limit`` the expansion of num/den matches ``c`` through
    order m + n.  With it (requires m == n), matching stops at order
    m + n - 1 and the freed condition pins num[m]/den[n] to the limit.
    """
    if abs(c.alpha) > 1e-12:
        raise InsufficientCoefficientsError(
            "series must have zero prefactor exponent (divide it out first)")
    if m < 0 or n < 0:
        raise ValueError("degrees must be non-negative")
    if infinity_limit is not None and m != n:
        raise ValueError("a finite limit at infinity requires m == n")
    needed = m + n if infinity_limit is None else m + n - 1
    if c.order < needed:
        raise InsufficientCoefficientsError(
            f"need series order >= {needed}, got {c.order}")
    cc = np.asarray(c.coeffs) * c.amplitude  # c0 = amplitude (normally 1)
    size = m + n
    if size == 0:
        return PadeApproximant(c.step, (cc[0],), (1.0,))
    a = np.zeros((size, size))
    rhs = np.zeros(size)
    rows = range(1, size + 1) if infinity_limit is None else range(1, size)
    for i, k in enumerate(rows):
        if 1 <= k <= m:
            a[i, k - 1] = 1.0
        for j in range(1, n + 1):
            if k - j >= 0:
                a[i, m + j - 1] = -cc[k - j]
        rhs[i] = cc[k]
    if infinity_limit is not None:
        a[size - 1, m - 1] = 1.0
        a[size - 1, m + n - 1] = -infinity_limit
        rhs[size - 1] = 0.0
    try:
        sol = solve_partial_pivot(a, rhs)
    except DegenerateTableError:
        # an exactly consistent but underdetermined table (the function is
        # rational of lower degree) has a gauge freedom: take the minimum-norm
        # solution, accepted only if it reproduces the series
        sol, *_ = np.linalg.lstsq(a, rhs, rcond=None)
        candidate = PadeApproximant(c.step, (cc[0],) + tuple(sol[:m]),
                                    (1.0,) + tuple(sol[m:]))
        re_exp = candidate.expand(size).raw_coeffs()
        scale = max(1.0, float(np.max(np.abs(cc))))
        matched = size if infinity_limit is None else size - 1
        if any(abs(re_exp[k] - cc[k]) > 1e-9 * scale
               for k in range(min(matched, len(re_exp)) + 1)):
            raise
        return candidate
    num = (cc[0],) + tuple(sol[:m])
    den = (1.0,) + tuple(sol[m:])
    return PadeApproximant(c.step, num, den)
