class FockModelError(Exception):
    """Base class for errors raised by this package."""


class ValidationError(FockModelError, ValueError):
    """Raised when a tuple, table or input file is malformed."""

    def __init__(self, msg, field=None):
        super().__init__(msg)
        self.field = field


class NonCommutingError(ValidationError):
    """Raised when the matrices of a tuple fail the commutator tolerance."""


class NotCyclicError(FockModelError):
    """Raised when a check needs a cyclic vector and the Krylov span is deficient."""


class NotPositiveError(FockModelError):
    """Raised when a table that should be a Gram matrix has a negative eigenvalue."""


class DegreeOverflowError(FockModelError, ValueError):
    """Raised when an operation needs moments beyond the stored degree."""


class DegreeTooSmallError(DegreeOverflowError):
    pass


class AmbiguousSpectrumError(FockModelError):
    """Raised when joint eigenvalues cannot be grouped reliably."""


class NotJordanInputError(FockModelError):
    """Raised when a distribution representation is requested for a non-Jordan tuple."""


class EmptyQuotientError(FockModelError):
    """Raised when every direction of a moment table is numerically null."""
