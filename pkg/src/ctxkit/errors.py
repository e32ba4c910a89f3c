"""Semantic exception hierarchy shared by every module.

Each class carries the process exit code used by the command line front
end, so library errors map onto scriptable statuses without a lookup
table: parse errors exit 2, validation errors 3, unknown labels 4.
I/O failures are reported via the built-in ``OSError`` and exit 5.
"""

from __future__ import annotations


class CtxkitError(Exception):
    """Base class for all toolkit errors."""

    exit_code = 1


class ParseError(CtxkitError):
    """A document or literal does not match its grammar."""

    exit_code = 2

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None and column is not None:
            message = f"line {line}, column {column}: {message}"
        elif line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(CtxkitError):
    """Structurally well-formed input that violates a semantic contract."""

    exit_code = 3


class DimensionMismatchError(ValidationError):
    """Operands live in different dimensions."""


class LinearDependenceError(ValidationError):
    """An operation requiring linear independence met a dependent family."""


class InvalidDensityError(ValidationError):
    """A matrix offered as a density operator fails the validity checks."""


class UnknownLabelError(CtxkitError):
    """A ray label that does not occur in the scenario."""

    exit_code = 4
