"""Exception types shared across the package."""

from __future__ import annotations


class FalsificationError(AssertionError):
    """A property the underlying theory asserts was observed to fail."""


class DegeneratePairError(ValueError):
    """Two solutions give xY - Xy = 0."""


class NonCrossingError(RuntimeError):
    """A fixed-point search never found T > rhs(T)."""
