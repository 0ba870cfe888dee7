"""Exception types raised across the package."""

from __future__ import annotations


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class QuadratureError(ArithmeticError):
    """Adaptive quadrature failed to reach its tolerance."""

    def __init__(self, message: str, value: float = float("nan"), error: float = float("inf")):
        super().__init__(message)
        self.value = value
        self.error = error


class ExprSyntaxError(ValueError):
    """Malformed expression source. ``column`` is 1-based."""

    def __init__(self, message: str, column: int):
        super().__init__(f"{message} (column {column})")
        self.column = column


class UnknownIdentifierError(ExprSyntaxError):
    """An identifier that is not part of the expression grammar."""

    def __init__(self, name: str, column: int):
        super().__init__(f"unknown identifier {name!r}", column)
        self.name = name


class EvaluationError(ArithmeticError):
    """Evaluating an expression left its domain or produced a non-finite value."""


class EvaluationDomainError(EvaluationError, DomainError):
    """``ln`` of a non-positive value or a fractional power of a negative one."""
