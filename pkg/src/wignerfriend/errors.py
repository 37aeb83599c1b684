"""Exception types shared across the package."""


class InputError(ValueError):
    """Raised when arguments violate a documented precondition."""


class NumericalError(ArithmeticError):
    """Raised when a numerical routine fails to converge or produces non-finite values."""
