"""Exception hierarchy shared by every kernel.

The CLI maps each class onto a fixed exit code, so new error types should
subclass one of these rather than ``Exception`` directly.
"""


class HafkitError(Exception):
    """Base class for all library errors."""


class PreconditionError(HafkitError, ValueError):
    """Input violates a documented precondition (symmetry, PSD, interval...)."""


class DimensionError(PreconditionError):
    """Shapes are incompatible or a square matrix was required."""


class ParityError(PreconditionError):
    """An even order was required."""


class DomainError(PreconditionError):
    """An index or count lies outside its admissible range."""


class SizeLimitError(HafkitError):
    """Input exceeds an explicit cost guard."""


class NumericalError(HafkitError, ArithmeticError):
    """A numerical routine failed to meet its accuracy contract."""


class ConvergenceError(NumericalError):
    """An iterative routine hit its iteration cap."""


class SingularMatrixError(NumericalError):
    """Matrix is singular or too ill-conditioned to invert."""


class ParseError(HafkitError, ValueError):
    """A matrix or block file is malformed."""
