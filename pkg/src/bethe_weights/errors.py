"""Exception types shared across the package.

Each class maps to one CLI exit status, see ``cli.py``.
"""


class BetheError(Exception):
    """Base class for all package errors."""


class ValidationError(BetheError):
    """Malformed input. ``path`` is a JSON pointer into the offending document."""

    def __init__(self, message, path=""):
        super().__init__(message)
        self.path = path
        self.message = message

    def __str__(self):
        if self.path:
            return f"{self.path}: {self.message}"
        return self.message


class PoleError(BetheError):
    """A denominator vanished. ``factor`` names the vanishing expression."""

    def __init__(self, factor, operands=None):
        msg = f"vanishing denominator: {factor}"
        if operands is not None:
            msg += f" (operands {operands})"
        super().__init__(msg)
        self.factor = factor
        self.operands = operands


class ShapeError(BetheError):
    """Incompatible operator shapes or leg structures."""


class InvariantError(BetheError):
    """A computed result violates a property it must satisfy (an internal bug)."""
