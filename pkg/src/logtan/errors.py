"""Exceptions shared across modules."""
from __future__ import annotations


class ScaleError(RuntimeError):
    """The requested instance is beyond the supported size."""


class DegenerateSampleError(RuntimeError):
    """Random sampling kept producing degenerate instances."""

    def __init__(self, message: str, certificate: dict | None = None):
        super().__init__(message)
        self.certificate = certificate
