"""Nested-radical interpolants between a small-x series and a power asymptote.

The closed form is

    f(x) = A x**alpha * (((1 + A1 x**e1)**n1 + A2 x**e2)**n2 + ... + Ak x**ek)**nk

with strictly increasing inner exponents.  Calibration proceeds from the
outermost level inward against the large-x hierarchy: the leading amplitude
fixes the outer level, each successive exponent gap and amplitude ratio fixes
the next level in, and any levels left over are pinned by the small-x series.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import brentq

from .errors import (
    AmbiguousAsymptoteError,
    EvaluationDomainError,
    MatchingFailureError,
    SeriesConstructionError,
    UnmatchableAsymptoteError,
)
from .series import (
    AsymptoticForm,
    GeneralizedSeries,
    ZERO,
    add,
    make_series,
    monomial,
    power,
    scale,
)

_DEFAULT_DOMAIN = (0.0, 1e6)
_MATCH_TOL = 1e-9


def _bracket_power(value: float, p: float, level: int, x: float) -> float:
    """value**p with domain policing for real powers."""
    if value > 0.0:
        return value ** p
    if value == 0.0:
        if p > 0:
            return 0.0
        raise EvaluationDomainError(
            f"zero bracket under non-positive power at level {level}, x={x:.6g}",
            level=level)
    if p == round(p):
        return value ** p
    raise EvaluationDomainError(
        f"negative bracket {value:.3e} under non-integer power at level "
        f"{level}, x={x:.6g}", level=level)


@dataclass(frozen=True)
class RootLevel:
    amplitude: float   # A_j
    exponent: float    # e_j > 0
    power: float       # n_j

    def to_json(self) -> dict:
        return {"A": self.amplitude, "e": self.exponent, "n": self.power}


@dataclass(frozen=True)
class NestedRootApproximant:
    prefactor_amplitude: float
    prefactor_exponent: float
    levels: tuple[RootLevel, ...]
    domain: tuple[float, float] = _DEFAULT_DOMAIN

    def __post_init__(self):
        if not self.levels:
            raise SeriesConstructionError("at least one nesting level required")
        exps = [lv.exponent for lv in self.levels]
        if any(e <= 0 for e in exps):
            raise SeriesConstructionError("inner exponents must be positive")
        if any(e2 <= e1 for e1, e2 in zip(exps, exps[1:])):
            raise SeriesConstructionError("inner exponents must strictly increase")
        lo, hi = self.domain
        lo, hi = max(lo, 1e-8), min(hi, 1e8)
        if hi > lo:
            for x in np.geomspace(lo, hi, 65):
                self._value(float(x))  # raises on a domain violation

    def _value(self, x: float) -> float:
        acc = 1.0 + self.levels[0].amplitude * x ** self.levels[0].exponent
        for j, lv in enumerate(self.levels):
            if j > 0:
                acc = acc + lv.amplitude * x ** lv.exponent
            acc = _bracket_power(acc, lv.power, j + 1, x)
        return self.prefactor_amplitude * x ** self.prefactor_exponent * acc

    def evaluate(self, x: float) -> float:
        if x < 0:
            raise EvaluationDomainError("x must be non-negative")
        if x == 0.0:
            a = self.prefactor_exponent
            if a > 0:
                return 0.0
            if a == 0:
                return self.prefactor_amplitude
            return math.copysign(math.inf, self.prefactor_amplitude)
        return self._value(x)

    __call__ = evaluate

    def eval012(self, x: float) -> tuple[float, float, float]:
        """Value and first two derivatives via (v, v', v'') recursion."""
        v, v1, v2 = 1.0, 0.0, 0.0
        for j, lv in enumerate(self.levels):
            t = lv.amplitude * x ** lv.exponent
            if j == 0:
                t += 1.0
                v, v1 = t, lv.amplitude * lv.exponent * x ** (lv.exponent - 1)
                v2 = lv.amplitude * lv.exponent * (lv.exponent - 1) * x ** (lv.exponent - 2)
            else:
                v = v + t
                v1 = v1 + lv.amplitude * lv.exponent * x ** (lv.exponent - 1)
                v2 = v2 + lv.amplitude * lv.exponent * (lv.exponent - 1) * x ** (lv.exponent - 2)
            p = lv.power
            w = _bracket_power(v, p, j + 1, x)
            wm1 = _bracket_power(v, p - 1, j + 1, x)
            wm2 = _bracket_power(v, p - 2, j + 1, x)
            w1 = p * wm1 * v1
            w2 = p * (p - 1) * wm2 * v1 * v1 + p * wm1 * v2
            v, v1, v2 = w, w1, w2
        a, al = self.prefactor_amplitude, self.prefactor_exponent
        pre = a * x ** al
        pre1 = a * al * x ** (al - 1)
        pre2 = a * al * (al - 1) * x ** (al - 2)
        return (pre * v,
                pre1 * v + pre * v1,
                pre2 * v + 2 * pre1 * v1 + pre * v2)

    def expand_small(self, order: int, step: float) -> GeneralizedSeries:
        """Nested binomial expansion on the given grid, exact through ``order``."""
        acc = make_series(1.0, 0.0, step, [1.0] + [0.0] * order)
        for lv in self.levels:
            term = ZERO if lv.amplitude == 0.0 else monomial(lv.amplitude,
                                                             lv.exponent, step)
            acc = add(acc, term).truncated(order)
            acc = power(acc, lv.power).truncated(order)
        out = scale(acc, self.prefactor_amplitude)
        return GeneralizedSeries(out.amplitude, out.alpha + self.prefactor_exponent,
                                 out.step, out.coeffs)

    def degree_at_infinity(self) -> float:
        """Growth exponent of the whole form as x -> infinity."""
        d = 0.0
        for j, lv in enumerate(self.levels):
            if j > 0 and abs(d - lv.exponent) <= 1e-12 * max(1.0, abs(d)):
                raise AmbiguousAsymptoteError(
                    f"tied dominant exponents at level {j + 1}")
            d = max(d, lv.exponent) * lv.power
        return d + self.prefactor_exponent

    def asymptotic_large(self, terms: int = 2) -> AsymptoticForm:
        """Leading large-x terms, assuming each level's own term dominates its
        bracket (the calibrated hierarchy).  Supports up to three terms."""
        if terms < 1:
            raise ValueError("terms must be >= 1")
        if terms > 3:
            raise AmbiguousAsymptoteError(
                "large-x expansion supported through three terms only")
        degs, lead = [0.0], [1.0]   # degree / leading amplitude of R_0, R_1, ...
        for j, lv in enumerate(self.levels):
            if lv.exponent <= degs[-1]:
                raise UnmatchableAsymptoteError(
                    f"level {j + 1} term does not dominate its bracket "
                    f"(e={lv.exponent} <= inner degree {degs[-1]})")
            if lv.amplitude <= 0 and lv.power != round(lv.power):
                raise UnmatchableAsymptoteError(
                    f"level {j + 1} amplitude {lv.amplitude} not admissible at "
                    "large x under a non-integer power")
            degs.append(lv.exponent * lv.power)
            lead.append(lv.amplitude ** lv.power)
        k = len(self.levels)
        out = [(self.prefactor_amplitude * lead[-1],
                self.prefactor_exponent + degs[-1])]
        if terms >= 2:
            lv = self.levels[-1]
            gap = degs[-2] - lv.exponent             # < 0
            ratio = lv.power * lead[-2] / lv.amplitude
            out.append((out[0][0] * ratio, out[0][1] + gap))
        if terms >= 3:
            lv = self.levels[-1]
            gap = degs[-2] - lv.exponent
            quad = (out[0][0] * 0.5 * lv.power * (lv.power - 1)
                    * (lead[-2] / lv.amplitude) ** 2,
                    out[0][1] + 2 * gap)
            cands = [quad]
            if k >= 2:
                lv2 = self.levels[-2]
                gap2 = degs[-3] - lv2.exponent
                chain = (out[1][0] * lv2.power * lead[-3] / lv2.amplitude,
                         out[1][1] + gap2)
                if abs(chain[1] - quad[1]) <= 1e-12:
                    raise AmbiguousAsymptoteError("tied third-order exponents")
                cands.append(chain)
            out.append(max(cands, key=lambda t: t[1]))
        return AsymptoticForm(tuple(out[:terms]))

    def to_json(self) -> dict:
        return {
            "prefactor": {"amplitude": self.prefactor_amplitude,
                          "exponent": self.prefactor_exponent},
            "levels": [lv.to_json() for lv in self.levels],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @staticmethod
    def from_json(obj: dict) -> "NestedRootApproximant":
        pre = obj["prefactor"]
        levels = tuple(RootLevel(float(l["A"]), float(l["e"]), float(l["n"]))
                       for l in obj["levels"])
        return NestedRootApproximant(float(pre["amplitude"]),
                                     float(pre["exponent"]), levels)


@dataclass(frozen=True)
class RootMixture:
    """Convex combination of root approximants sharing a prefactor exponent."""

    components: tuple[tuple[float, NestedRootApproximant], ...]

    def __post_init__(self):
        if not self.components:
            raise SeriesConstructionError("mixture needs at least one component")
        total = sum(w for w, _ in self.components)
        if abs(total - 1.0) > 1e-12:
            raise SeriesConstructionError(f"mixture weights sum to {total}, not 1")

    def evaluate(self, x: float) -> float:
        return sum(w * r.evaluate(x) for w, r in self.components)

    __call__ = evaluate

    def eval012(self, x: float) -> tuple[float, float, float]:
        f = fp = fpp = 0.0
        for w, r in self.components:
            v0, v1, v2 = r.eval012(x)
            f += w * v0
            fp += w * v1
            fpp += w * v2
        return f, fp, fpp

    def expand_small(self, order: int, step: float) -> GeneralizedSeries:
        acc = None
        for w, r in self.components:
            part = scale(r.expand_small(order, step), w)
            acc = part if acc is None else add(acc, part)
        return acc

    def to_json(self) -> dict:
        return {"components": [{"weight": w, "root": r.to_json()}
                               for w, r in self.components]}

    @staticmethod
    def from_json(obj: dict) -> "RootMixture":
        return RootMixture(tuple(
            (float(c["weight"]), NestedRootApproximant.from_json(c["root"]))
            for c in obj["components"]))


def as_mixture(root: NestedRootApproximant | RootMixture) -> RootMixture:
    if isinstance(root, RootMixture):
        return root
    return RootMixture(((1.0, root),))


def canonical_powers(k: int, p: int, alpha: float,
                     betas: Sequence[float]) -> list[float]:
    """Unique powers on the integer exponent grid e_j = j.

    n_j = (j+1)/j                                   for j = 1 .. k-p
    j n_j = j + 1 + beta_{k-j+1} - beta_{k-j}       for j = k-p+1 .. k-1
    k n_k = beta_1 - alpha
    """
    if not 1 <= p < k:
        raise UnmatchableAsymptoteError(
            f"need 1 <= p < k for canonical powers, got k={k}, p={p}")
    betas = list(betas)
    if len(betas) != p:
        raise ValueError(f"expected {p} asymptote exponents, got {len(betas)}")
    if any(b2 >= b1 for b1, b2 in zip(betas, betas[1:])):
        raise ValueError("asymptote exponents must strictly descend")
    n = [0.0] * (k + 1)
    for j in range(1, k - p + 1):
        n[j] = (j + 1) / j
    for j in range(k - p + 1, k):
        n[j] = (j + 1 + betas[k - j] - betas[k - j - 1]) / j
    n[k] = (betas[0] - alpha) / k
    return n[1:]


def _solve_amplitude(target: float, exponent: float) -> float:
    """Positive solution of A**exponent = target via bracketed root finding."""
    if target <= 0 or not math.isfinite(target):
        raise MatchingFailureError(
            f"amplitude equation A**{exponent} = {target} has no positive root")
    if exponent == 0:
        raise MatchingFailureError("zero exponent in amplitude equation")
    fn = lambda a: exponent * math.log(a) - math.log(target)
    lo, hi = 1e-6, 1e6
    flo, fhi = fn(lo), fn(hi)
    tries = 0
    while flo * fhi > 0 and tries < 8:
        lo, hi = lo * 1e-3, hi * 1e3
        flo, fhi = fn(lo), fn(hi)
        tries += 1
    if flo * fhi > 0:
        raise MatchingFailureError("could not bracket the amplitude equation")
    return brentq(fn, lo, hi, rtol=1e-15)


def match_parameters(template: Sequence[tuple[float, float | None]],
                     small: GeneralizedSeries,
                     large: AsymptoticForm,
                     domain: tuple[float, float] = _DEFAULT_DOMAIN,
                     ) -> NestedRootApproximant:
    """Calibrate a nested root against two-sided asymptotic data.

    ``template`` lists (inner exponent, power-or-None) innermost first; every
    amplitude is free.  The small series supplies the prefactor and pins any
    amplitudes the large hierarchy cannot reach; amplitude-ratio equations are
    matched in magnitude (the sign of a matched amplitude is taken positive).
    """
    levels = [(float(e), None if n is None else float(n)) for e, n in template]
    if not levels:
        raise ValueError("template must be non-empty")
    k = len(levels)
    pre_a, pre_al = small.amplitude, small.alpha
    terms = list(large.terms)
    p = len(terms)
    if p > k:
        raise UnmatchableAsymptoteError(
            f"{p} asymptote terms over-determine a {k}-level root")

    powers: list[float | None] = [n for _, n in levels]
    amps: list[float | None] = [None] * k
    b1, beta1 = terms[0]

    # outermost level from the leading term
    e_k = levels[-1][0]
    if powers[-1] is None:
        powers[-1] = (beta1 - pre_al) / e_k
    elif abs(pre_al + e_k * powers[-1] - beta1) > _MATCH_TOL:
        raise UnmatchableAsymptoteError(
            f"outer power {powers[-1]} cannot produce exponent {beta1}")
    amps[-1] = _solve_amplitude(b1 / pre_a, powers[-1])

    # one level inward per additional asymptote term
    gap = None
    for m in range(1, p):
        j = k - m - 1          # 0-based index of the level being fixed
        b_m, beta_m = terms[m]
        b_prev, beta_prev = terms[m - 1]
        gap = beta_m - beta_prev
        if gap >= 0:
            raise UnmatchableAsymptoteError("asymptote exponents must descend")
        degree = levels[j + 1][0] + gap      # required growth of R_j
        e_j = levels[j][0]
        if powers[j] is None:
            powers[j] = degree / e_j
        elif abs(e_j * powers[j] - degree) > _MATCH_TOL:
            raise UnmatchableAsymptoteError(
                f"level {j + 1} power {powers[j]} cannot produce the "
                f"exponent gap {gap}")
        ratio = abs(b_m / b_prev)
        target = ratio * amps[j + 1] / abs(powers[j + 1])
        amps[j] = _solve_amplitude(target, powers[j])

    # remaining inner levels: powers extend the last gap, amplitudes come
    # from the small series at the level's own exponent
    for j in range(k - p - 1, -1, -1):
        if powers[j] is None:
            if gap is None:
                raise MatchingFailureError(
                    f"level {j + 1} power is undetermined: no exponent gap "
                    "available and none fixed in the template")
            powers[j] = (levels[j + 1][0] + gap) / levels[j][0]

    pending = [j for j in range(k) if amps[j] is None]
    for j in pending:
        amps[j] = 0.0
    for j in pending:
        e_j = levels[j][0]
        pos = e_j / small.step
        idx = round(pos)
        if abs(pos - idx) > 1e-9 or idx > small.order:
            raise MatchingFailureError(
                f"small series has no coefficient at exponent {e_j} "
                f"to pin level {j + 1}")
        target = small.coeffs[idx]
        probe = []
        for trial in (0.0, 1.0):
            amps[j] = trial
            root = _build(pre_a, pre_al, levels, powers, amps, probe=True)
            ser = root.expand_small(idx, small.step)
            probe.append(ser.coeffs[idx] if idx <= ser.order else 0.0)
        slope = probe[1] - probe[0]
        if abs(slope) < 1e-14:
            raise MatchingFailureError(
                f"small-series coefficient at exponent {e_j} is insensitive "
                f"to level {j + 1}")
        amps[j] = (target - probe[0]) / slope

    return _build(pre_a, pre_al, levels, powers, amps, domain=domain)


def _build(pre_a, pre_al, levels, powers, amps, domain=_DEFAULT_DOMAIN,
           probe: bool = False):
    lv = tuple(RootLevel(a, e, n)
               for (e, _), n, a in zip(levels, powers, amps))
    if probe:
        # amplitude-probe construction: skip the domain sweep
        return NestedRootApproximant(pre_a, pre_al, lv, domain=(1.0, 1.0))
    return NestedRootApproximant(pre_a, pre_al, lv, domain=domain)
