"""Closed-form comparison formulas with coefficients pinned as fixtures.

Every entry is an evaluable object; those built on rational or nested-power
forms also expose exact first and second derivatives for residual checks.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import UnknownBaselineError
from ..pade import PadeApproximant
from ..rootapprox import NestedRootApproximant, RootLevel


@dataclass(frozen=True)
class SqrtOfRational:
    """sqrt(num(z)/den(z)) with z = x**gamma."""

    inner: PadeApproximant

    def evaluate(self, x: float) -> float:
        return math.sqrt(max(self.inner.evaluate(x), 0.0))

    __call__ = evaluate

    def eval012(self, x: float) -> tuple[float, float, float]:
        g, g1, g2 = self.inner.eval012(x)
        s = math.sqrt(g)
        f1 = g1 / (2.0 * s)
        f2 = g2 / (2.0 * s) - g1 * g1 / (4.0 * g * s)
        return s, f1, f2


@dataclass(frozen=True)
class _AndrianovForm:
    """Empirical half-line profile with a slowly varying closing term."""

    def evaluate(self, x: float) -> float:
        z = math.sqrt(x)
        fmod = (1.0 + 0.2783 * x / (1.0 + x) ** 0.228) ** 3.886
        num = (1.0 + 0.1336 * z - 1.3038 * x + 0.9598 * x * z
               - 0.2523 * x * x + x * x * z)
        den = (1.0 + 0.1336 * z + 0.2842 * x - 0.1614 * x * z
               + 0.0209 * x * x + fmod * x * x * z)
        return num / den

    __call__ = evaluate


def _pade(gamma, num, den):
    return PadeApproximant(gamma, tuple(num), tuple(den))


def _sommerfeld():
    return NestedRootApproximant(1.0, 0.0,
                                 (RootLevel(0.278343, 0.772002, -3.886),))


_REGISTRY = {
    # -- screened-potential problem -------------------------------------------
    "sommerfeld": _sommerfeld,
    "andrianov": _AndrianovForm,
    "tf_p03": lambda: _pade(0.5, [1.0],
                            [1.0, 0.0, 1.58807, -1.33333, 2.52197, -3.59963,
                             5.44951]),
    "tf_p14": lambda: _pade(0.5, [1.0, 7.29513, 8.70365],
                            [1.0, 7.29513, 10.2917, 10.2519, 6.61714, 3.19361,
                             1.14009, 0.246624, 0.0573431]),
    "tf_p25": lambda: _pade(0.5, [1.0, 0.0611225, -0.75871, 2.75597, 0.957022],
                            [1.0, 0.0611225, 0.829361, 1.51971, 2.19261,
                             1.94282, 1.16124, 0.560225, 0.147749, 0.0609348,
                             -0.00321342]),
    "tf_p17": lambda: _pade(0.5, [1.0, 1.502670],
                            [1.0, 1.502670, 1.588071, 1.053015, 0.518408,
                             0.190063, 0.040455, 0.010435]),
    "tf_p28": lambda: _pade(0.5, [1.0, -8.448419, -14.953104],
                            [1.0, -8.448419, -13.365089, -14.750023,
                             -9.960151, -4.968737, -1.850739, -0.392334,
                             -0.103841]),
    # -- vortex-profile problem ------------------------------------------------
    "nls_p22_frac": lambda: _pade(
        1.0,
        [0.0, 0.58319, 0.58319 * 0.758279, 0.58319 * 0.600453,
         0.58319 * 0.971322],
        [1.0, 0.758279, 0.725453, 0.350178, 0.566465]),
    "nls_p23_frac": lambda: _pade(
        1.0,
        [0.0, 0.58319, 0.58319 * 0.691638, 0.58319 * 0.307419,
         0.58319 * 0.0996674, 0.58319 * 0.0234523],
        [1.0, 0.691638, 0.432419, 0.186122, 0.058125, 0.0136771]),
    "nls_modified_p33": lambda: SqrtOfRational(_pade(
        2.0, [0.0, 0.340111, 0.0745487, 0.0181768],
        [1.0, 0.469190, 0.0927255, 0.0181768])),
    "berloff_naive": lambda: SqrtOfRational(_pade(
        2.0, [0.0, 0.3437, 0.0286], [1.0, 0.3333, 0.0286])),
    # -- frictional-relaxation problem -----------------------------------------
    "rd_p22": lambda: _pade(1.0, [0.5, -1.99743, 1.64601],
                            [1.0, -2.21843, 0.60727]),
    "rd_p33": lambda: _pade(1.0, [0.5, -2.76077, 4.42424, -1.83935],
                            [1.0, -3.74512, 3.45167, -0.543545]),
    "rd_p44": lambda: _pade(1.0, [0.5, -3.52899, 8.39113, -7.53882, 1.92114],
                            [1.0, -5.28156, 8.65607, -4.62722, 0.501267]),
    "rd_p55": lambda: _pade(1.0, [0.5, -4.30291, 13.5796, -19.0149, 11.167,
                                  -1.96629],
                            [1.0, -6.82939, 16.2834, -15.9743, 5.77314,
                             -0.478209]),
    "rd_p12": lambda: _pade(1.0, [0.5, -1.33466],
                            [1.0, -0.892888, -0.330028]),
    "rd_p23": lambda: _pade(1.0, [0.5, -2.20204, 2.19219],
                            [1.0, -2.62765, 0.972664, 0.135056]),
    "rd_p34": lambda: _pade(1.0, [0.5, -3.00676, 5.5076, -2.91787],
                            [1.0, -4.2371, 4.74443, -1.02208, -0.0664454]),
    "rd_p45": lambda: _pade(1.0, [0.5, -3.79116, 9.96764, -10.4266, 3.45104],
                            [1.0, -5.80588, 10.8777, -7.11483, 1.03717,
                             0.0348388]),
}


def baseline_names() -> list[str]:
    return sorted(_REGISTRY)


def baseline_formulas(name: str):
    """Evaluable for a named comparison formula (coefficients are fixtures)."""
    try:
        factory = _REGISTRY[name]
    except KeyError:
        raise UnknownBaselineError(
            f"unknown baseline {name!r}; known: {', '.join(baseline_names())}"
        ) from None
    return factory()
