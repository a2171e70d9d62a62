"""Exception hierarchy shared by every module."""

from __future__ import annotations


class ShiftedHulthenError(Exception):
    """Base class for all package errors."""


class ParameterError(ShiftedHulthenError, ValueError):
    """A parameter record or argument violates its invariants."""


class DomainError(ShiftedHulthenError, ValueError):
    """A radius lies outside the physical domain (r <= 0, or inside a q > 1 pole)."""


class SingularityError(ShiftedHulthenError, ValueError):
    """The q-deformed denominator 1 - q exp(-r/b) fell below the floor."""


class ComplexRootError(ShiftedHulthenError, ValueError):
    """A square-root argument went negative, so no real solution exists."""


class NoRootError(ShiftedHulthenError, RuntimeError):
    """Root bracketing found no sign change."""


class AmbiguousRootError(ShiftedHulthenError, RuntimeError):
    """Root bracketing found more than one sign change."""

    def __init__(self, message: str, roots=()):
        super().__init__(message)
        self.roots = tuple(roots)


class BranchError(ShiftedHulthenError, RuntimeError):
    """No candidate pi(s) branch satisfies the decaying-solution rule."""


class ConvergenceError(ShiftedHulthenError, RuntimeError):
    """An iterative procedure (bisection, inverse iteration, quadrature) stalled."""


class UnboundStateError(ShiftedHulthenError, ValueError):
    """A bound-state-only operation was requested for an unbound or rejected state."""

    def __init__(self, message: str, status=None):
        super().__init__(message)
        self.status = status


class GoldenDataError(ShiftedHulthenError, RuntimeError):
    """Embedded golden data is missing or fails its checksum."""
