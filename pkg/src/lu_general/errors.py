"""Exception types shared across the package."""


class BoundsError(IndexError):
    """A 1-based submatrix or entry index falls outside the matrix."""


class ShapeError(ValueError):
    """Operand dimensions are incompatible with the requested operation."""


class FieldMismatchError(TypeError):
    """Operands live over different scalar fields."""


class SingularityError(ArithmeticError):
    """A matrix required to be invertible is singular."""


class PreconditionError(ValueError):
    """A documented precondition of an operation does not hold."""


class SpecError(ValueError):
    """A generator spec is internally inconsistent (e.g. rank > n)."""


class ParseError(ValueError):
    """A matrix file cannot be parsed; the message names the offending cell."""
