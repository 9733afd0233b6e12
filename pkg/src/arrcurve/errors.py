from __future__ import annotations


class ArrangementError(ValueError):
    """Invalid input: bad arrangement data, a flat that does not belong, etc."""


class NotSimplicialError(ArrangementError):
    """An operation that needs a simplicial arrangement got a different one."""


class CapExceededError(RuntimeError):
    """An enumeration would exceed its configured size cap."""


class InvariantViolation(RuntimeError):
    """An internal cross-check failed; this always indicates a bug."""
