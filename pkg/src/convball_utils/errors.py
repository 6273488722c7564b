"""
errors.py — Exception hierarchy for the convergence-ball toolkit.

Every class also derives from the closest builtin so callers that catch
ValueError / ArithmeticError keep working.
"""

from typing import Optional


class ConvballError(Exception):
    """Base class for all toolkit errors."""


class DomainError(ConvballError, ValueError):
    """A point lies at or beyond a pole, or outside an operator's declared domain."""


class EvalDomainError(DomainError):
    """An expression could not be evaluated (log of a nonpositive number, ...)."""


class NoRootError(ConvballError, ArithmeticError):
    """No sign change of a gap function was found on the search window."""

    def __init__(self, index: int, message: Optional[str] = None):
        self.index = index
        super().__init__(message or f"no positive root found for majorant index i={index}")


class SingularJacobianError(ConvballError, ArithmeticError):
    """A Jacobian factorization met a pivot below the singularity threshold."""

    def __init__(self, stage: str = "x", message: Optional[str] = None):
        self.stage = stage
        super().__init__(message or f"singular Jacobian at sub-step '{stage}'")


class MaxIterationsExceeded(ConvballError, RuntimeError):
    """The iteration stopped at max_iterations; the trace is attached."""

    def __init__(self, trace, message: Optional[str] = None):
        self.trace = trace
        steps = len(trace.steps) - 1 if trace is not None else 0
        super().__init__(message or f"no convergence after {steps} iterations")


class InsufficientDataError(ConvballError, ValueError):
    """Fewer than three usable errors for an order estimate."""


class BallViolationError(ConvballError, ValueError):
    """The starting point lies outside the convergence ball."""


class ParseError(ConvballError, ValueError):
    """Syntax error in an expression; carries the offending position."""

    def __init__(self, position: int, message: str):
        self.position = position
        super().__init__(f"at position {position}: {message}")


class ArityError(ConvballError, ValueError):
    """Equation count does not match variable count."""


class MissingRootError(ConvballError, LookupError):
    """The problem does not declare a known root."""
