"""Self-similarly corrected rational approximants for nonlinear problems.

The package factors a sought function into a nested-root factor carrying the
irrational large-argument behaviour times a rational (two-point) correction
fitted to the small-argument series, and ships three fully worked
boundary-value case studies with reference solvers and benchmark tables.
"""
from .corrected import (
    AsymptoticsReport,
    CorrectedApproximant,
    build,
    correcting_series,
    verify_asymptotics,
)
from .errors import SspadeError
from .exponents import ExponentEstimate, large_variable_exponent
from .pade import PadeApproximant, from_series
from .rootapprox import (
    NestedRootApproximant,
    RootLevel,
    RootMixture,
    as_mixture,
    canonical_powers,
    match_parameters,
)
from .series import (
    AsymptoticForm,
    GeneralizedSeries,
    add,
    divide,
    log_derivative,
    make_series,
    monomial,
    multiply,
    power,
    scale,
    taylor_from_ode,
)

__version__ = "0.1.0"

__all__ = [
    "AsymptoticForm",
    "AsymptoticsReport",
    "CorrectedApproximant",
    "ExponentEstimate",
    "GeneralizedSeries",
    "NestedRootApproximant",
    "PadeApproximant",
    "RootLevel",
    "RootMixture",
    "SspadeError",
    "add",
    "as_mixture",
    "build",
    "canonical_powers",
    "correcting_series",
    "divide",
    "from_series",
    "large_variable_exponent",
    "log_derivative",
    "make_series",
    "match_parameters",
    "monomial",
    "multiply",
    "power",
    "scale",
    "taylor_from_ode",
    "verify_asymptotics",
]
