"""Numerics for the fully fractional heat operator: kernels, the fractional
potential, explicit solutions, phase-plane classification and verifiable
reports."""

__version__ = "0.1.0"

from .errors import DomainError, NonConvergenceError  # noqa: E402

__all__ = ["__version__", "DomainError", "NonConvergenceError"]
