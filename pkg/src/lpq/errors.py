"""Exception types shared across the package."""


class LpqError(Exception):
    """Base class for every library-specific error."""


class ValidationError(LpqError, ValueError):
    """An instance or argument violates a documented precondition."""


class DegenerateInstance(ValidationError):
    """Zero labels or an empty marked set."""


class OverflowsLabelSpace(ValidationError):
    """The marked progression does not fit inside the label set."""


class PeriodTooLarge(ValidationError):
    """Strict mode requires p*p <= n."""


class MarkedSetTooLarge(ValidationError):
    """Strict mode requires 2*m <= n."""


class LabelOutOfRange(ValidationError):
    """Oracle queried outside 0..n-1."""


class CaseMismatch(ValidationError):
    """A per-frequency formula was applied outside its spectral case."""


class ZeroDenominator(ValidationError):
    """Continued fraction of x/0 requested."""


class NotUnitary(ValidationError):
    """Supplied transform fails the norm-preservation spot check."""


class InvalidProbability(ValidationError):
    """Probability outside (0, 1]."""


class VerificationFailed(LpqError):
    """Oracle probes rejected the candidate (offset, period) pair."""


class NonTermination(LpqError):
    """A seeded search exceeded its iteration guard."""
