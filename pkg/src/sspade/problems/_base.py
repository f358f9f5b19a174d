"""Shared problem/reference-solution types and the error/defect functionals."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from ..series import AsymptoticForm, GeneralizedSeries

Residual = Callable[[float, float, float, float], float]  # (f, f', f'', x)


@dataclass(frozen=True)
class ProblemDefinition:
    name: str
    residual: Residual
    small_series: GeneralizedSeries
    large_asymptote: AsymptoticForm | None
    domain: tuple[float, float]
    boundary: tuple[tuple[float, float], ...]


@dataclass(frozen=True)
class ReferenceSolution:
    """High-accuracy solution values on a grid, with the solver kept callable."""

    grid: tuple[float, ...]
    values: tuple[float, ...]
    metadata: dict = field(compare=False)
    _eval: Callable[[float], float] = field(repr=False, compare=False)

    def value(self, x: float) -> float:
        return self._eval(x)

    __call__ = value


def _eval012(approx, x: float) -> tuple[float, float, float]:
    """Value and two derivatives of an approximant-like object."""
    if hasattr(approx, "eval012"):
        return approx.eval012(x)
    # fall back to Richardson-style central differences on a plain callable
    f = approx(x)
    h = 1e-4 * max(1.0, abs(x))
    fp = (approx(x + h) - approx(x - h)) / (2 * h)
    fpp = (approx(x + h) - 2 * f + approx(x - h)) / (h * h)
    return f, fp, fpp


def residual_values(problem: ProblemDefinition, approx,
                    grid: Sequence[float]) -> list[float]:
    """Signed residual E[f] of the approximant at each grid point."""
    out = []
    for x in grid:
        f, fp, fpp = _eval012(approx, float(x))
        out.append(problem.residual(f, fp, fpp, float(x)))
    return out


def defect(problem: ProblemDefinition, approx,
           grid: Sequence[float]) -> tuple[list[float], float]:
    """Pointwise |E[f]| and its supremum over the grid."""
    vals = [abs(v) for v in residual_values(problem, approx, grid)]
    return vals, max(vals)


@dataclass(frozen=True)
class ErrorRow:
    x: float
    value: float
    reference: float
    percent: float | None      # None when the reference vanishes
    excluded: bool = False


def relative_error_table(approx, ref, points: Sequence[float]) -> list[ErrorRow]:
    """Percent errors (f - ref)/ref * 100 at the given points.

    ``ref`` may be a ReferenceSolution, a mapping, or a plain callable.
    Points where the reference vanishes are flagged and excluded.
    """
    if isinstance(ref, ReferenceSolution):
        lookup = ref.value
    elif isinstance(ref, dict):
        lookup = lambda x: ref[x]
    else:
        lookup = ref
    fn = approx.evaluate if hasattr(approx, "evaluate") else approx
    rows = []
    for x in points:
        x = float(x)
        fv, rv = fn(x), float(lookup(x))
        if rv == 0.0:
            rows.append(ErrorRow(x, fv, rv, None, excluded=True))
        else:
            rows.append(ErrorRow(x, fv, rv, (fv - rv) / rv * 100.0))
    return rows
