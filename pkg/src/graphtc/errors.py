"""Exception types shared across the package."""

from __future__ import annotations


class PreconditionError(ValueError):
    """An input violates a hypothesis the computation depends on.

    ``hypothesis`` names the violated condition in human-readable form,
    e.g. ``"m(G) >= 2"``; the CLI echoes it and exits with status 2.
    """

    def __init__(self, message: str, hypothesis: str | None = None):
        super().__init__(message)
        self.hypothesis = hypothesis


class ResourceLimitError(RuntimeError):
    """A configured ceiling (cell count, refinement steps, tree count) was exceeded."""


class EmbeddingError(ValueError):
    """A planar embedding is invalid or too tight for a geometric construction."""


class MotionError(ValueError):
    """A sequence of particle moves is not a valid closed motion."""
