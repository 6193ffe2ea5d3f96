# utils/errors.py


class RobinKitError(Exception):
    """Base class for every error raised by robinkit."""


class BudgetExceededError(RobinKitError):
    """A limit, range or index is larger than the configured budget."""


class DomainError(RobinKitError, ValueError):
    """Input outside the mathematical domain of an operation."""


class NotPrimeError(DomainError):
    """A prime was required."""


class TableTooSmallError(RobinKitError):
    """The prime table does not reach the requested argument."""


class CriticalEpsilonError(RobinKitError):
    """Epsilon sits on a critical value where two exponent vectors tie."""


class DeductionRefusedError(RobinKitError):
    """An interval deduction was requested from endpoints that do not hold."""


class UsageError(RobinKitError):
    """Bad command line."""
