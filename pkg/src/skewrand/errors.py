"""Exception hierarchy shared by every module."""


class SkewRandError(Exception):
    """Base class for all package errors."""


class ParameterError(SkewRandError, ValueError):
    """An argument violates its documented precondition."""


class EdgeListError(ParameterError):
    """Malformed edge-list text; ``lineno`` is 1-based."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class SamplingError(SkewRandError, RuntimeError):
    """A rejection sampler ran out of attempts."""


class NumericError(SkewRandError, ArithmeticError):
    """An eigensolver or quadrature failed to reach its tolerance."""
