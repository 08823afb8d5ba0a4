"""Exception hierarchy."""


class GrowthOpsError(Exception):
    """Base class for all errors raised by growthops."""


class DomainError(GrowthOpsError, ValueError):
    """An argument lies outside the region where an operation is defined."""


class ExprSyntaxError(GrowthOpsError, ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        pointer = ""
        if text:
            pointer = f"\n  {text}\n  {' ' * position}^"
        super().__init__(f"{message} at position {position}{pointer}")


class SingularityError(GrowthOpsError, ArithmeticError):
    """Evaluation produced a non-finite value."""


class InvalidWeightError(GrowthOpsError, ValueError):
    pass


class UnsupportedError(GrowthOpsError, NotImplementedError):
    """The requested combination has no implemented formula or representation."""


class QuadratureError(GrowthOpsError, RuntimeError):
    """A quadrature self-check failed."""
