"""Exception hierarchy shared by all modules.

The ``exit_code`` attribute is what the command line front end reports:
1 for internal invariant/verification failures, 2 for invalid input,
3 for resource or conditioning limits.
"""


class HurwitzError(Exception):
    """Base class for all package errors."""

    exit_code = 1


class ValidationError(HurwitzError):
    """Malformed input: wrong shape, non-hermitian entries, bad arguments."""

    exit_code = 2


class DomainError(ValidationError):
    """Input is well-formed but outside the mathematical domain of the operation."""


class PreconditionError(ValidationError):
    """Stated preconditions of an inequality or estimate are not satisfied."""


class ResourceError(HurwitzError):
    """An enumeration or search cap was exceeded."""

    exit_code = 3


class ConditioningError(HurwitzError):
    """A numerical procedure exceeded its conditioning limits."""

    exit_code = 3


class ConsistencyError(HurwitzError):
    """Two internally redundant computations disagree beyond tolerance."""


class StructuralError(HurwitzError):
    """A structural decomposition that must exist could not be realized."""


class SearchError(HurwitzError):
    """An iterative search failed after exhausting its restart budget."""
