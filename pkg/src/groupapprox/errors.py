"""Exception types shared across the package."""

from __future__ import annotations

__all__ = [
    "GroupApproxError",
    "ParameterError",
    "FormatError",
    "GroupAxiomError",
    "CapacityError",
    "ScopeError",
]


class GroupApproxError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(GroupApproxError, ValueError):
    """An argument is outside the documented domain (bad n, non-prime p, ...)."""


class FormatError(GroupApproxError, ValueError):
    """Malformed textual input (Cayley tables, group spec strings)."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class GroupAxiomError(GroupApproxError, ValueError):
    """A supplied multiplication table violates the group axioms."""


class CapacityError(GroupApproxError, RuntimeError):
    """The request is well-formed but exceeds a documented capacity limit."""


class ScopeError(GroupApproxError, RuntimeError):
    """The operation is only defined for a restricted parameter range."""
