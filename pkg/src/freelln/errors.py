"""Exception types shared across the package."""


class FreeLLNError(Exception):
    """Base class for package errors."""


class InputValidationError(FreeLLNError, ValueError):
    """Malformed or out-of-domain input (bad roots, sign pattern, domain)."""


class DegreeMismatchError(InputValidationError):
    pass


class SignPatternError(InputValidationError):
    """Coefficients do not describe a polynomial with non-negative roots."""


class PrecisionBudgetExceeded(FreeLLNError, ArithmeticError):
    """Raised when a computation would need more precision than allowed.

    ``achieved`` carries the best relative tolerance reached, when known.
    """

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved
