"""Exception types shared across the package."""
from __future__ import annotations

from .padic import PrecisionError

__all__ = ["EmbeddingAmbiguityError", "PrecisionError", "PreconditionError"]


class PreconditionError(ValueError):
    """Inputs violate a mathematical precondition (parity, p | N, phi(p) != 1, ...)."""


class EmbeddingAmbiguityError(ValueError):
    """More than one p-adic root qualifies; the caller must choose the embedding."""
