"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class StekboundError(Exception):
    """Base class for every error raised by this package."""


class DomainError(StekboundError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class InputError(StekboundError, ValueError):
    """Required descriptor data is missing or malformed."""


class ScopeError(StekboundError, ValueError):
    """The requested bound does not apply to the given class or index."""


class ConvergenceError(StekboundError, ArithmeticError):
    """An iterative computation stopped before reaching its tolerance.

    ``estimate`` and ``error`` carry the best value found so far.
    """

    def __init__(self, message: str, estimate: float, error: float):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class RangeError(StekboundError, ValueError):
    """A target value lies outside the range of a monotone function."""


class BracketError(StekboundError, ArithmeticError):
    """No sign change was found while growing a root bracket."""


class ResolutionError(StekboundError, ArithmeticError):
    """A discretisation is too coarse for the requested eigenvalues."""
