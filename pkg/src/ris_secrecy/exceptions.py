"""Exception types shared across the package."""


class ConstraintViolation(ValueError):
    """A decision variable violates its feasibility constraint."""


class SingularMatrixError(ArithmeticError):
    """A matrix that must be invertible is (numerically) singular."""


class ConvergenceError(RuntimeError):
    """An iterative solver exhausted its iteration budget."""
