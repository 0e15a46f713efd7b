"""Exception types shared across the package."""


class ExactAlgebraError(Exception):
    """Base class for every error this package raises on purpose."""


class DivisionByZero(ExactAlgebraError, ZeroDivisionError):
    """Scalar division by zero."""


class NonSquareMatrix(ExactAlgebraError):
    """A square matrix was required."""


class DimensionMismatch(ExactAlgebraError):
    """Operands live in spaces of different dimensions."""


class SizeTooSmall(ExactAlgebraError):
    """A constructor needs a larger size parameter (n >= 2 throughout)."""


class ConditionViolation(ExactAlgebraError):
    """Family parameters violate an admissibility condition."""


class AxiomsNotVerified(ExactAlgebraError):
    """An operation requires a product that passed the axiom checks first."""


class Degenerate(ExactAlgebraError):
    """A two-form with zero determinant where non-degeneracy is required."""


class NotClosed(ExactAlgebraError):
    """A two-form violating the cocycle condition where closedness is required."""


class IntegerLambda(ExactAlgebraError):
    """The form-family parameter must not be an integer."""


class ZeroLambdaI(ExactAlgebraError):
    """A derived form-family coefficient vanished."""


class ParseError(ExactAlgebraError):
    """Malformed textual or JSON input."""
