"""Exception types shared across the package."""


class CharvolError(Exception):
    """Base class for all package errors."""


class SizeMismatch(CharvolError):
    """Matrix size outside the supported range or inconsistent shapes."""


class InvariantViolation(CharvolError):
    """A checked numerical invariant (det, trace, cocycle rule) failed."""


class RegularityError(CharvolError):
    """An element required to be regular is not, or clusters are ambiguous."""


class CohomologyRankError(CharvolError):
    """Observed cohomology rank differs from the structural expectation."""


class MarginError(CharvolError):
    """A genericity margin (chart denominator) is below threshold."""


class BudgetExceeded(CharvolError):
    """A rejection sampler ran out of attempts."""
