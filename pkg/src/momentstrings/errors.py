"""Exception hierarchy.

The three top-level families map onto the command-line exit codes:
malformed input (1), classification violations (2) and numerical
failures (3).
"""


class MomentStringsError(Exception):
    """Base class for every error raised by this package."""

    exit_code = 1


class MalformedInputError(MomentStringsError, ValueError):
    exit_code = 1


class InsufficientMomentsError(MalformedInputError):
    """More moments are needed than the sequence provides."""

    def __init__(self, missing_index, what=""):
        self.missing_index = missing_index
        msg = f"moment s_{missing_index} is required but missing"
        if what:
            msg = f"{what}: {msg}"
        super().__init__(msg)


class DivisionByZeroPolynomialError(MomentStringsError, ZeroDivisionError):
    pass


class NotVanishingAtInfinityError(MomentStringsError, ValueError):
    pass


class ClassificationError(MomentStringsError):
    exit_code = 2


class NonPositiveError(ClassificationError):
    """The data cannot be the moments of a positive measure."""


class NotStrictlyPositiveError(ClassificationError):
    pass


class DepthExceedsRankError(ClassificationError):
    pass


class NotDoublePositiveError(ClassificationError):
    pass


class NotHerglotzError(ClassificationError):
    pass


class NumericalError(MomentStringsError, ArithmeticError):
    exit_code = 3


class RealSpectralParameterError(MomentStringsError, ValueError):
    """Weyl functions are only sampled off the real axis."""


class ConsistencyError(NumericalError):
    """Two independent computations of the same object disagree."""
