"""Exception hierarchy.  Every precondition failure is a ``ValueError`` subclass."""


class NonSpectralError(ValueError):
    """Base class for precondition failures raised by this package."""


class SingularMatrixError(NonSpectralError):
    pass


class CoprimalityError(NonSpectralError):
    """``gcd(det(M), p) != 1``."""


class NotExpandingError(NonSpectralError):
    pass


class HypothesisError(NonSpectralError):
    """The zero set of the mask is not a nonempty subset of the punctured grid."""


class DigitSetError(NonSpectralError):
    pass


class NotPrimeError(NonSpectralError):
    pass


class ConstructionError(NonSpectralError):
    """A construction was requested outside the class it is valid for."""
