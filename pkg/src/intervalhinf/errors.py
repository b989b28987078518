"""Exception types shared across the analysis pipeline.

The CLI maps these onto process exit codes: input problems exit 2,
instability verdicts exit 3, numerical failures exit 4.
"""


class IntervalHinfError(Exception):
    """Base class for all library errors."""


class DegreeOrderError(IntervalHinfError):
    """Numerator/plant degree does not sit strictly below the denominator degree."""


class ZeroPolynomialError(IntervalHinfError):
    """An operation received the zero polynomial where a nonzero one is required."""


class DegenerateLeadingError(IntervalHinfError):
    """Leading coefficient too small relative to the rest to define the degree."""


class NoConvergenceError(IntervalHinfError):
    """Root iteration hit its cap with an unacceptable residual."""


class UnstableClosedLoopError(IntervalHinfError):
    """f + g is not Hurwitz, so the sensitivity function is undefined."""


class UnstableDenominatorError(IntervalHinfError):
    """H-infinity norm requested for a rational function with unstable denominator."""


class DeltaRangeError(IntervalHinfError):
    """delta outside (0, 1), or equivalently gamma outside (1, inf)."""


class HullMismatchError(IntervalHinfError):
    """A value-set hull vertex fell outside the predicted eight vertex tuples."""


class NoUpperBracketError(IntervalHinfError):
    """Bisection could not bracket the family norm below the gamma cap."""


class UnstableFamilyError(IntervalHinfError):
    """The closed-loop interval family is not robustly stable."""


class TheoremPreconditionGapError(IntervalHinfError):
    """A mixed vertex sum failed the Hurwitz check despite stable matched sums."""


class ProblemFileError(IntervalHinfError):
    """A problem file failed to parse or validate; carries a field-path diagnostic."""
