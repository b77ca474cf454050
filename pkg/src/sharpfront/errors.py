"""Exception types shared across the package.

The CLI maps these onto exit codes: configuration/usage problems exit 2,
numerical failures exit 3, failed assertion-style comparisons exit 1.
"""

from __future__ import annotations


class SharpFrontError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(SharpFrontError):
    """Invalid configuration, parameters, or input data."""


class NoEdgeError(SharpFrontError):
    """The field has no support edge (all-zero or full support where one is required)."""


class EdgeLeftDomainError(SharpFrontError):
    """The tracked support edge reached the left boundary of the grid."""


class NumericalError(SharpFrontError):
    """A numerical procedure failed (refit breakdown, step underflow, ...)."""


class InsufficientDataError(SharpFrontError):
    """Not enough data points for the requested estimate."""
