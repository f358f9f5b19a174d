"""Case-study problems, reference solvers, and error/defect functionals."""
from __future__ import annotations

from typing import Sequence

from ._base import (
    ErrorRow,
    ProblemDefinition,
    ReferenceSolution,
    defect,
    relative_error_table,
    residual_values,
)
from .baselines import baseline_formulas, baseline_names
from .nls_vortex import nls_problem
from .ruina_dieterich import ruina_dieterich_problem
from .thomas_fermi import thomas_fermi_problem

_REFERENCE_BUILDERS = {
    "thomas-fermi": "thomas_fermi",
    "nls-vortex": "nls_vortex",
    "ruina-dieterich": "ruina_dieterich",
}


def reference_solution(problem: ProblemDefinition,
                       grid: Sequence[float]) -> ReferenceSolution:
    """High-accuracy reference for one of the three case-study problems."""
    from . import nls_vortex, ruina_dieterich, thomas_fermi
    mod = {"thomas-fermi": thomas_fermi, "nls-vortex": nls_vortex,
           "ruina-dieterich": ruina_dieterich}[problem.name]
    return mod.reference(tuple(grid))


__all__ = [
    "ErrorRow",
    "ProblemDefinition",
    "ReferenceSolution",
    "baseline_formulas",
    "baseline_names",
    "defect",
    "nls_problem",
    "reference_solution",
    "relative_error_table",
    "residual_values",
    "ruina_dieterich_problem",
    "thomas_fermi_problem",
]
