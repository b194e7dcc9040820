"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class HalfPlaneError(Exception):
    """Base class for all errors raised by :mod:`halfplane`."""


class ConfigurationError(HalfPlaneError, ValueError):
    """A scenario, profile or run configuration violates a stated bound."""


class DomainError(HalfPlaneError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class GeometryError(DomainError):
    """A finite-difference stencil would cross the screen or a jump ray."""


class JumpLineError(DomainError):
    """A discontinuous component was evaluated exactly on its jump ray.

    The one-sided limits differ there; pass ``side=+1`` or ``side=-1`` to
    select one of them.
    """

    def __init__(self, message: str, ray: float):
        super().__init__(message)
        self.ray = ray


class PoleProximityError(HalfPlaneError, ArithmeticError):
    """A kernel was evaluated within the exclusion radius of one of its poles."""

    def __init__(self, message: str, location: complex):
        super().__init__(message)
        self.location = location


class PrecisionError(HalfPlaneError, ArithmeticError):
    """A numerical procedure could not reach the requested tolerance."""

    def __init__(self, message: str, estimate: complex = float("nan"), achieved: float = float("inf")):
        super().__init__(message)
        self.estimate = estimate
        self.achieved = achieved


class ExtrapolationError(HalfPlaneError, ArithmeticError):
    """Richardson extrapolation of a one-sided difference sequence diverged."""

    def __init__(self, message: str, raw: list):
        super().__init__(message)
        self.raw = raw


class CrossValidationError(HalfPlaneError):
    """Two independent evaluation routes disagree beyond tolerance."""
