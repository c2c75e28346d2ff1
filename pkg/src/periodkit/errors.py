"""Exception hierarchy.

Each error class carries the CLI exit code it maps to, so the dispatcher
can translate failures without a lookup table.
"""


class PeriodkitError(Exception):
    exit_code = 1


class DomainError(PeriodkitError, ValueError):
    """Input outside the mathematical domain of a routine."""

    exit_code = 2


class NotFoundError(DomainError):
    """A search exhausted its range without a qualifying answer."""


class UnsupportedModeError(DomainError):
    """A mode or option that is not implemented for the given input."""


class SizeLimitError(PeriodkitError):
    """An enumeration would exceed its configured budget."""

    exit_code = 3


class BudgetError(SizeLimitError):
    """A search could not reach a conclusion within its budget."""


class LemmaViolation(PeriodkitError):
    """A computed object contradicts a proven statement.

    This is never expected on valid input and signals a bug.
    """

    exit_code = 4


class ConsistencyError(LemmaViolation):
    """An internal cross-check (parity, symmetry, recount) failed."""
