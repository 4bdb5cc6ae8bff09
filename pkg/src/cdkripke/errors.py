"""Exception types shared across the package."""

from __future__ import annotations


class UsageError(ValueError):
    """A caller violated an operation's precondition."""


class ParseError(ValueError):
    """Malformed concrete syntax. Carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"at position {position}: {message}")
        self.message = message
        self.position = position


class ModelValidationError(ValueError):
    """A model file or raw model failed validation; carries all violations."""

    def __init__(self, violations):
        self.violations = list(violations)
        lines = "; ".join(str(v) for v in self.violations)
        super().__init__(f"invalid model: {lines}")


class EnumerationCapError(RuntimeError):
    """A bounded search was refused because its space exceeds the ceiling."""


class ConstructionError(RuntimeError):
    """A synthesized separation failed its own verification (internal bug)."""
