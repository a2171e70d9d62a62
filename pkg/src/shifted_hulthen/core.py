"""Parameter records and the map to dimensionless quantities.

Every downstream module works with the four scalars

    beta = 2 mu V1 / (hbar alpha)^2
    chi  = -2 mu (V0 + alpha^2 / 2) / (hbar alpha)^2
    eta  = (D + 2l - 1)(D + 2l - 3) / 4
    eps  = -2 mu E / (hbar alpha)^2

so that the radial equation in s = exp(-alpha r) has integer-free,
unit-free coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import ParameterError


def _finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ParameterError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class PhysicalConstants:
    """Reduced Planck constant and reduced mass; natural units by default."""

    hbar: float = 1.0
    mu: float = 1.0

    def __post_init__(self):
        for name in ("hbar", "mu"):
            value = _finite(name, getattr(self, name))
            if value <= 0:
                raise ParameterError(f"{name} must be positive, got {value!r}")
            object.__setattr__(self, name, value)

    @property
    def kinetic_scale(self) -> float:
        """hbar^2 / (2 mu), the factor turning k^2 into an energy."""
        return self.hbar * self.hbar / (2.0 * self.mu)


NATURAL = PhysicalConstants()


@dataclass(frozen=True)
class PotentialParams:
    """Depths, range and deformation of the generalized shifted Hulthen potential.

    Supply either ``b`` or ``alpha``; the other is derived so that
    ``alpha == 1 / b`` always holds.

    Parameters
    ----------
    v0, v1 : float
        Depths multiplying the single and squared denominator terms.
    b : float, optional
        Range. Must be positive.
    q : float
        Deformation parameter. ``q == 0`` is rejected.
    alpha : float, optional
        Screening parameter 1/b.
    """

    v0: float
    v1: float
    b: Optional[float] = None
    q: float = 1.0
    alpha: Optional[float] = field(default=None)

    def __post_init__(self):
        b, alpha = self.b, self.alpha
        if b is None and alpha is None:
            raise ParameterError("one of b or alpha is required")
        if b is None:
            alpha = _finite("alpha", alpha)
            if alpha <= 0:
                raise ParameterError(f"alpha must be positive, got {alpha!r}")
            b = 1.0 / alpha
        elif alpha is None:
            b = _finite("b", b)
            if b <= 0:
                raise ParameterError(f"b must be positive, got {b!r}")
            alpha = 1.0 / b
        else:
            b, alpha = _finite("b", b), _finite("alpha", alpha)
            if b <= 0 or not math.isclose(alpha * b, 1.0, rel_tol=1e-12):
                raise ParameterError(f"inconsistent b={b!r} and alpha={alpha!r}")
        q = _finite("q", self.q)
        if q == 0.0:
            raise ParameterError("q = 0 is not a deformation of this family")
        object.__setattr__(self, "v0", _finite("v0", self.v0))
        object.__setattr__(self, "v1", _finite("v1", self.v1))
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "alpha", alpha)

    def replace(self, **changes) -> "PotentialParams":
        """Copy with changes; changing one of b/alpha recomputes the other."""
        data = {"v0": self.v0, "v1": self.v1, "q": self.q}
        if "alpha" in changes and "b" not in changes:
            data["alpha"] = changes.pop("alpha")
        elif "b" in changes and "alpha" not in changes:
            data["b"] = changes.pop("b")
        else:
            data["b"] = changes.pop("b", self.b)
            data["alpha"] = changes.pop("alpha", self.alpha)
        data.update(changes)
        return PotentialParams(**data)


@dataclass(frozen=True)
class StateIndex:
    n: int
    l: int
    d: int = 3

    def __post_init__(self):
        for name, low in (("n", 0), ("l", 0), ("d", 1)):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value:
                raise ParameterError(f"{name} must be an integer, got {value!r}")
            if value < low:
                raise ParameterError(f"{name} must be >= {low}, got {value!r}")
            object.__setattr__(self, name, int(value))


@dataclass(frozen=True)
class DimensionlessParams:
    """The scalars (beta, chi, eta, eps_n). ``eps_n`` is None until quantized."""

    beta: float
    chi: float
    eta: float
    eps_n: Optional[float] = None

    def with_eps(self, eps: float) -> "DimensionlessParams":
        return DimensionlessParams(self.beta, self.chi, self.eta, float(eps))


def centrifugal_fraction(state: StateIndex) -> Fraction:
    k = state.d + 2 * state.l
    return Fraction((k - 1) * (k - 3), 4)


def centrifugal_factor(state: StateIndex) -> float:
    """(D + 2l - 1)(D + 2l - 3) / 4, formed exactly before conversion."""
    return float(centrifugal_fraction(state))


def to_dimensionless(
    p: PotentialParams, c: PhysicalConstants, s: StateIndex
) -> DimensionlessParams:
    scale = 2.0 * c.mu / (c.hbar * p.alpha) ** 2
    beta = scale * p.v1
    chi = -scale * (p.v0 + 0.5 * p.alpha * p.alpha)
    return DimensionlessParams(beta=beta, chi=chi, eta=centrifugal_factor(s))


def energy_scale(p: PotentialParams, c: PhysicalConstants) -> float:
    """hbar^2 alpha^2 / (2 mu): E = -energy_scale * eps."""
    return (c.hbar * p.alpha) ** 2 / (2.0 * c.mu)


def energy_from_epsilon(eps: float, p: PotentialParams, c: PhysicalConstants) -> float:
    eps = float(eps)
    if not eps >= 0.0:
        raise ParameterError(f"eps must be non-negative for a bound state, got {eps!r}")
    return -energy_scale(p, c) * eps


def epsilon_from_energy(energy: float, p: PotentialParams, c: PhysicalConstants) -> float:
    return -float(energy) / energy_scale(p, c)
