"""Exception types raised across the package."""


class ValidationError(ValueError):
    """Input violates a documented precondition."""


class NotInvertibleError(ZeroDivisionError):
    """Division by an element with no inverse (zero, or a zero divisor)."""


class UnsupportedShapeError(ValueError):
    """Operation is only defined for some algebra shapes."""


class DegenerateCubeError(ValueError):
    """Cube has vanishing quartic invariant."""


class AxiomViolation(ArithmeticError):
    """A twisted composition algebra axiom fails."""


class NotAGoodBasisError(ArithmeticError):
    """Transported tensors are not of the good-basis form."""


class SearchExhausted(RuntimeError):
    """A bounded search found no witness."""

    def __init__(self, message, bound=None):
        super().__init__(message)
        self.bound = bound
