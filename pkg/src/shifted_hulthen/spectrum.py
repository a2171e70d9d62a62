"""Closed-form bound-state energies and their validity classification.

For effective parameters (beta, chi, eta) and deformation q the closed form is

    root      = 1/4 + beta/q^2 + eta/q
    M         = n + 1/2 + sqrt(root)
    numerator = M^2 - beta/q^2 - chi/q
    eps       = (numerator / M)^2 / 4
    E         = -(hbar alpha)^2 / (8 mu) * (numerator / M)^2

The decaying solution has sqrt(eps) = -numerator / (2M), so a state is
bound only when ``numerator < 0``. Squaring hides that sign, which is why
``validity`` checks it explicitly.

The three centrifugal schemes enter through effective parameters:

* scheme 1 uses (beta, chi, eta) as they are;
* scheme 2 moves the barrier into the potential terms,
  (beta + eta, chi - kappa eta, 0), with kappa from the scheme's reading;
* scheme 3 uses scheme 1 and shifts eps by -eta c0.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

from .core import (
    NATURAL,
    DimensionlessParams,
    PhysicalConstants,
    PotentialParams,
    StateIndex,
    centrifugal_factor,
    energy_scale,
    to_dimensionless,
)
from .errors import ComplexRootError, ParameterError
from .potentials import SCHEME1, ApproximationScheme, SchemeTag


class StatusTag(enum.Enum):
    BOUND = "Bound"
    UNBOUND = "Unbound"
    COMPLEX_REJECTED = "ComplexRejected"


@dataclass(frozen=True)
class BoundStateStatus:
    tag: StatusTag
    detail: str = ""

    @property
    def is_bound(self) -> bool:
        return self.tag is StatusTag.BOUND

    def __str__(self) -> str:
        return self.tag.value if not self.detail else f"{self.tag.value}: {self.detail}"


BOUND = BoundStateStatus(StatusTag.BOUND)


@dataclass(frozen=True)
class ClosedFormTerms:
    """Named intermediates of the closed form, for localizing mismatches."""

    root_arg: float
    m: float
    numerator: float
    bracket: float
    eps: float


@dataclass(frozen=True)
class EnergyResult:
    """Energy of one state under one scheme.

    ``energy`` and ``eps_n`` hold the formal closed-form values even for an
    ``Unbound`` status (so tables can still be compared); both are None when
    the status is ``ComplexRejected``.
    """

    energy: Optional[float]
    eps_n: Optional[float]
    scheme: ApproximationScheme
    status: BoundStateStatus
    state: Optional[StateIndex] = None
    terms: Optional[ClosedFormTerms] = None

    @property
    def is_bound(self) -> bool:
        return self.status.is_bound


def closed_form_terms(dp: DimensionlessParams, q: float, n: int) -> ClosedFormTerms:
    """Evaluate every intermediate of the closed form.

    Raises
    ------
    ComplexRootError
        If ``1/4 + beta/q^2 + eta/q < 0``.
    """
    if n < 0:
        raise ParameterError("n must be non-negative")
    q2 = q * q
    root_arg = 0.25 + dp.beta / q2 + dp.eta / q
    if root_arg < 0.0:
        raise ComplexRootError(f"1/4 + beta/q^2 + eta/q = {root_arg!r} < 0")
    m = n + 0.5 + math.sqrt(root_arg)
    numerator = m * m - dp.beta / q2 - dp.chi / q
    bracket = numerator / m
    return ClosedFormTerms(root_arg, m, numerator, bracket, 0.25 * bracket * bracket)


def epsilon_closed_form(dp: DimensionlessParams, q: float, n: int) -> float:
    return closed_form_terms(dp, q, n).eps


def effective_params(
    dp: DimensionlessParams, scheme: ApproximationScheme, alpha: float
) -> DimensionlessParams:
    """Fold the scheme's centrifugal approximant into (beta, chi, eta)."""
    if scheme.tag is SchemeTag.SCHEME2:
        kappa = scheme.kappa(alpha)
        return DimensionlessParams(dp.beta + dp.eta, dp.chi - kappa * dp.eta, 0.0)
    return DimensionlessParams(dp.beta, dp.chi, dp.eta)


def epsilon_offset(dp: DimensionlessParams, scheme: ApproximationScheme) -> float:
    """Constant subtracted from eps by the scheme (only scheme 3 has one)."""
    return dp.eta * scheme.c0 if scheme.tag is SchemeTag.SCHEME3 else 0.0


def _evaluate(p, c, s, scheme) -> EnergyResult:
    dp = to_dimensionless(p, c, s)
    eff = effective_params(dp, scheme, p.alpha)
    try:
        terms = closed_form_terms(eff, p.q, s.n)
    except ComplexRootError as exc:
        status = BoundStateStatus(StatusTag.COMPLEX_REJECTED, str(exc))
        return EnergyResult(None, None, scheme, status, s)
    eps = terms.eps - epsilon_offset(dp, scheme)
    energy = -energy_scale(p, c) * eps
    if terms.numerator >= 0.0:
        status = BoundStateStatus(
            StatusTag.UNBOUND,
            f"bracket numerator M^2 - beta/q^2 - chi/q = {terms.numerator!r} >= 0 (growing solution)",
        )
    elif not eps > 0.0:
        status = BoundStateStatus(StatusTag.UNBOUND, f"eps = {eps!r} <= 0")
    else:
        status = BOUND
    return EnergyResult(energy, eps, scheme, status, s, terms)


def energy_approx1(p: PotentialParams, c: PhysicalConstants, s: StateIndex) -> EnergyResult:
    return _evaluate(p, c, s, SCHEME1)


def energy_approx2(
    p: PotentialParams, c: PhysicalConstants, s: StateIndex, eq4_reading: str = "printed"
) -> EnergyResult:
    return _evaluate(p, c, s, ApproximationScheme(SchemeTag.SCHEME2, eq4_reading=eq4_reading))


def energy_approx3(
    p: PotentialParams, c: PhysicalConstants, s: StateIndex, c0: float = 1.0 / 12.0
) -> EnergyResult:
    return _evaluate(p, c, s, ApproximationScheme(SchemeTag.SCHEME3, c0=c0))


def energy(
    p: PotentialParams, c: PhysicalConstants, s: StateIndex, scheme: ApproximationScheme = SCHEME1
) -> EnergyResult:
    """Dispatch to the closed form of ``scheme``."""
    return _evaluate(p, c, s, scheme)


def validity(
    p: PotentialParams, c: PhysicalConstants, s: StateIndex, scheme: ApproximationScheme = SCHEME1
) -> BoundStateStatus:
    """Bound iff the root argument is >= 0, the bracket numerator is < 0 and eps > 0."""
    return _evaluate(p, c, s, scheme).status


def n_max(
    p: PotentialParams,
    c: PhysicalConstants,
    l: int,
    d: int = 3,
    scheme: ApproximationScheme = SCHEME1,
    limit: int = 1_000_000,
) -> int:
    """Largest n with a Bound status, or -1 when even n = 0 is not bound."""
    best = -1
    for n in range(limit):
        res = _evaluate(p, c, StateIndex(n, l, d), scheme)
        if res.status.tag is StatusTag.COMPLEX_REJECTED:
            break
        if res.is_bound:
            best = n
        elif res.terms.numerator >= 0.0:
            # numerator grows with n: nothing above can be bound
            break
    return best


# Special cases. These are written out as explicit formulas rather than by
# calling the general path, so the reduction identities are real checks.


def hulthen_params(v0: float, alpha: float) -> PotentialParams:
    """General-family parameters that reduce to -V0 s / (1 - s)."""
    return PotentialParams(v0=-v0 - 0.5 * alpha * alpha, v1=0.0, alpha=alpha, q=1.0)


def woods_saxon_params(v0: float, alpha: float) -> PotentialParams:
    """General-family parameters that reduce to -V0 s / (1 + s)."""
    return PotentialParams(v0=-v0 - 0.5 * alpha * alpha, v1=0.0, alpha=alpha, q=-1.0)


def _special_result(p, c, s, scheme, root_arg, numerator_of, offset):
    if root_arg < 0.0:
        status = BoundStateStatus(StatusTag.COMPLEX_REJECTED, f"root argument {root_arg!r} < 0")
        return EnergyResult(None, None, scheme, status, s)
    m = s.n + 0.5 + math.sqrt(root_arg)
    numerator = numerator_of(m)
    prefactor = (c.hbar * p.alpha) ** 2 / (8.0 * c.mu)
    energy_value = -prefactor * (numerator / m) ** 2 + offset
    eps = -energy_value / energy_scale(p, c)
    terms = ClosedFormTerms(root_arg, m, numerator, numerator / m, 0.25 * (numerator / m) ** 2)
    if numerator >= 0.0:
        status = BoundStateStatus(StatusTag.UNBOUND, f"bracket numerator {numerator!r} >= 0")
    elif not eps > 0.0:
        status = BoundStateStatus(StatusTag.UNBOUND, f"eps = {eps!r} <= 0")
    else:
        status = BOUND
    return EnergyResult(energy_value, eps, scheme, status, s, terms)


def energy_hulthen(
    scheme: ApproximationScheme,
    v0: float,
    alpha: float,
    c: PhysicalConstants = NATURAL,
    s: StateIndex = StateIndex(0, 0, 3),
) -> EnergyResult:
    """Hulthen well -V0 exp(-alpha r) / (1 - exp(-alpha r)).

    With z = 2 mu V0 / (hbar alpha)^2 and M = n + 1/2 + sqrt(1/4 + eta):

    * scheme 1: E = -(hbar alpha)^2/(8 mu) ((M^2 - z) / M)^2
    * scheme 2: numerator M^2 - z - eta + kappa eta
    * scheme 3: scheme 1 plus (hbar alpha)^2/(2 mu) eta c0

    For l = 0, D = 3 this is -(hbar alpha)^2 ((n+1)^2 - z)^2 / (8 mu (n+1)^2).
    """
    p = hulthen_params(v0, alpha)
    eta = centrifugal_factor(s)
    z = 2.0 * c.mu * v0 / (c.hbar * alpha) ** 2
    offset = 0.0
    if scheme.tag is SchemeTag.SCHEME2:
        kappa = scheme.kappa(alpha)

        def numerator_of(m):
            return m * m - eta - z + kappa * eta

    else:

        def numerator_of(m):
            return m * m - z

        if scheme.tag is SchemeTag.SCHEME3:
            offset = (c.hbar * alpha) ** 2 / (2.0 * c.mu) * eta * scheme.c0
    return _special_result(p, c, s, scheme, 0.25 + eta, numerator_of, offset)


def energy_woods_saxon(
    scheme: ApproximationScheme,
    v0: float,
    alpha: float,
    c: PhysicalConstants = NATURAL,
    s: StateIndex = StateIndex(0, 0, 3),
) -> EnergyResult:
    """Woods-Saxon well -V0 exp(-alpha r) / (1 + exp(-alpha r)).

    With z = 2 mu V0 / (hbar alpha)^2:

    * scheme 1: root 1/4 - eta, numerator M^2 + z
    * scheme 2: root 1/4 + eta, numerator M^2 + z - (kappa + 1) eta
    * scheme 3: scheme 1 plus (hbar alpha)^2/(2 mu) eta c0

    An attractive well (V0 > 0) always gives a positive numerator, so these
    states classify as Unbound.
    """
    p = woods_saxon_params(v0, alpha)
    eta = centrifugal_factor(s)
    z = 2.0 * c.mu * v0 / (c.hbar * alpha) ** 2
    offset = 0.0
    if scheme.tag is SchemeTag.SCHEME2:
        kappa = scheme.kappa(alpha)
        root_arg = 0.25 + eta

        def numerator_of(m):
            return m * m + z - (kappa + 1.0) * eta

    else:
        root_arg = 0.25 - eta

        def numerator_of(m):
            return m * m + z

        if scheme.tag is SchemeTag.SCHEME3:
            offset = (c.hbar * alpha) ** 2 / (2.0 * c.mu) * eta * scheme.c0
    return _special_result(p, c, s, scheme, root_arg, numerator_of, offset)
