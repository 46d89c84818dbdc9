"""Exception hierarchy shared by all modules.

The CLI maps each family to an exit code, so new errors should subclass
one of the three roots below.
"""


class MaxlexError(Exception):
    """Base class for every error raised by this package."""


class DomainError(MaxlexError, ValueError):
    """A precondition on the inputs does not hold."""


class SizeMismatch(DomainError):
    pass


class ContainmentViolation(DomainError):
    pass


class NotAPartition(DomainError):
    pass


class EmptyPartition(DomainError):
    pass


class NotRectangular(DomainError):
    pass


class DivisibilityError(DomainError):
    pass


class RankOutOfRange(DomainError):
    pass


class IndexOutOfRange(DomainError, IndexError):
    pass


class WeightConstraintViolation(DomainError):
    pass


class NotHermitian(DomainError):
    pass


class BudgetExceeded(MaxlexError):
    """The exhaustive oracle would run past its configured size budget."""


class ConvergenceFailure(MaxlexError, ArithmeticError):
    """An iterative numerical routine did not converge."""


class RankDeficiencyWarning(UserWarning):
    """The eigen-gap at the rank cutoff is too small for a reliable answer."""
