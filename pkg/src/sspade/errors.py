"""Exception hierarchy for the sspade package."""


class SspadeError(Exception):
    """Base class for all numerical / construction failures in this package."""


class SeriesConstructionError(SspadeError, ValueError):
    """Invalid series construction (zero step, empty or zero-leading coefficients)."""


class GridMismatchError(SspadeError):
    """Exponent grids of two series are incommensurate."""


class DivisionSingularityError(SspadeError):
    """Series division by a zero leading coefficient."""


class SingularInitialConditionError(SspadeError):
    """ODE right-hand side is singular at the requested initial value."""


class DegenerateTableError(SspadeError):
    """The linear system of a rational fit is singular or near-singular."""


class InsufficientCoefficientsError(SspadeError):
    """Not enough series coefficients for the requested rational fit."""


class UnmatchableAsymptoteError(SspadeError):
    """No root level can produce the required large-argument exponent gap."""


class MatchingFailureError(SspadeError):
    """A scalar matching equation has no admissible solution."""


class AmbiguousAsymptoteError(SspadeError):
    """Tied dominant exponents make the large-argument expansion ambiguous."""


class EvaluationDomainError(SspadeError):
    """Evaluation left the admissible domain (negative bracket under a real power).

    ``level`` is the 1-based index of the offending nesting level, when known.
    """

    def __init__(self, message: str, level: int | None = None):
        super().__init__(message)
        self.level = level


class InconsistentFactorError(SspadeError):
    """Irrational factor does not reproduce the leading behaviour of the series."""


class SolverError(SspadeError):
    """A reference ODE solve or shooting iteration failed to converge."""


class UnknownBaselineError(SspadeError, KeyError):
    """Requested closed-form baseline name is not registered."""
