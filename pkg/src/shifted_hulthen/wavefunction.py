"""Radial wavefunctions from the NU construction.

On the selected branch pi(0) = sqrt(eps) and phi'/phi = pi/sigma gives

    R(r) = N s^sqrt(eps) (1 - q s)^nu P_n^(a, b)(1 - 2 q s),  s = exp(-alpha r)

with nu = 1/2 + sqrt(1/4 + beta/q^2 + eta/q), a = 2 sqrt(eps), b = 2 nu - 1,
all taken from the scheme's effective parameters. R is the reduced radial
function u(r) that solves u'' = (W(r) - k^2) u, so the normalization is
the plain integral of R^2 over r.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np
from scipy import integrate

from .core import PhysicalConstants, PotentialParams, StateIndex, to_dimensionless
from .errors import ConvergenceError, DomainError, ParameterError, UnboundStateError
from .potentials import SCHEME1, ApproximationScheme, singular_radius
from .spectrum import StatusTag, closed_form_terms, effective_params, energy


@dataclass(frozen=True)
class JacobiParams:
    a: float
    b: float

    def __post_init__(self):
        a, b = float(self.a), float(self.b)
        if not (a > -1.0 and b > -1.0):
            raise ParameterError(f"Jacobi parameters must exceed -1, got a={a!r}, b={b!r}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)


def jacobi_eval(n: int, jp: JacobiParams, x):
    """P_n^(a, b)(x) by the three-term recurrence; vectorized over ``x``."""
    if n < 0:
        raise ParameterError("n must be non-negative")
    a, b = jp.a, jp.b
    x = np.asarray(x, dtype=float)
    p_prev = np.ones_like(x)
    if n == 0:
        return float(p_prev) if x.ndim == 0 else p_prev
    p = (a + 1.0) + 0.5 * (a + b + 2.0) * (x - 1.0)
    ab2 = a * a - b * b
    for k in range(2, n + 1):
        t = 2 * k + a + b
        c1 = 2.0 * k * (k + a + b) * (t - 2.0)
        c2 = (t - 1.0) * (t * (t - 2.0) * x + ab2)
        c3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * t
        p_prev, p = p, (c2 * p - c3 * p_prev) / c1
    return float(p) if x.ndim == 0 else p


@dataclass(frozen=True)
class RadialWavefunction:
    """Evaluable R_nl(r).

    ``formal`` marks a function built from an Unbound closed form with
    ``strict=False``; such a function is a shape, not an eigenfunction.
    """

    state: StateIndex
    s_exponent: float
    bracket_exponent: float
    jacobi: JacobiParams
    q: float
    alpha: float
    norm: float = 1.0
    scheme: ApproximationScheme = SCHEME1
    energy: Optional[float] = None
    r_lower: float = 0.0
    r_cut: Optional[float] = None
    formal: bool = False

    def __call__(self, r):
        return eval_radial(self, r)

    @property
    def decay_length(self) -> float:
        return 1.0 / (self.alpha * self.s_exponent) if self.s_exponent > 0 else math.inf


def eval_radial(w: RadialWavefunction, r):
    """N s^sqrt(eps) (1 - q s)^nu P_n(1 - 2 q s) at ``r``.

    Raises
    ------
    DomainError
        For r < 0, or r below the pole b ln q when q > 1.
    """
    arr = np.asarray(r, dtype=float)
    if np.any(arr < w.r_lower) or np.any(arr < 0.0):
        raise DomainError(f"radius below the domain start {w.r_lower!r}")
    s = np.exp(-w.alpha * arr)
    if w.q > 0.0:
        den = -np.expm1(math.log(w.q) - w.alpha * arr)
    else:
        den = 1.0 - w.q * s
    den = np.maximum(den, 0.0)
    envelope = np.exp(-w.s_exponent * w.alpha * arr) * den**w.bracket_exponent
    out = w.norm * envelope * jacobi_eval(w.state.n, w.jacobi, 1.0 - 2.0 * w.q * s)
    return float(out) if arr.ndim == 0 else out


def _find_r_cut(w: RadialWavefunction, max_r: float) -> float:
    scale = w.decay_length if math.isfinite(w.decay_length) else 1.0 / w.alpha
    r_cut = w.r_lower + 10.0 * scale
    grid_pts = 2000
    while True:
        if r_cut > max_r:
            raise ConvergenceError(f"r_cut search exceeded {max_r:.6g}")
        grid = np.linspace(w.r_lower, r_cut, grid_pts)
        vals = eval_radial(w, grid) ** 2
        running = integrate.trapezoid(vals, grid)
        tail = vals[-(grid_pts // 20):].max()
        if running > 0.0 and tail < 1e-14 * running:
            return r_cut
        r_cut = w.r_lower + 2.0 * (r_cut - w.r_lower)


def _integrate_square(w: RadialWavefunction, r_cut: float, pieces: int) -> float:
    edges = np.linspace(w.r_lower, r_cut, pieces + 1)
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        val, _ = integrate.quad(
            lambda x: eval_radial(w, x) ** 2, lo, hi, epsabs=0.0, epsrel=1e-12, limit=400
        )
        total += val
    return total


def normalize(w: RadialWavefunction, pieces: int = 16, max_r: Optional[float] = None):
    """Constant N that makes the integral of R^2 over the domain equal to 1.

    The returned N is relative to ``w`` as given, so ``normalize(k * R)``
    equals ``normalize(R) / k``. Integration runs on [r_lower, r_cut] where
    r_cut is doubled until the tail of R^2 falls below 1e-14 of the
    integral, split into ``pieces`` panels each handled by adaptive
    quadrature.

    Raises
    ------
    ConvergenceError
        If r_cut would exceed ``max_r`` (default 1e4 / alpha).
    """
    if max_r is None:
        max_r = w.r_lower + 1e4 / w.alpha
    r_cut = _find_r_cut(w, max_r)
    total = _integrate_square(w, r_cut, pieces)
    if not total > 0.0:
        raise ConvergenceError("wavefunction integrates to zero")
    return 1.0 / math.sqrt(total), r_cut


def build_wavefunction(
    p: PotentialParams,
    c: PhysicalConstants,
    s: StateIndex,
    scheme: ApproximationScheme = SCHEME1,
    strict: bool = True,
) -> RadialWavefunction:
    """Assemble and normalize R_nl for one state.

    Parameters
    ----------
    strict : bool
        When True, anything but a Bound status raises
        :class:`UnboundStateError`. When False an Unbound closed form is
        still turned into a normalized shape with exponent |sqrt(eps)|
        (``formal=True``), which is what figure emission needs.
    """
    result = energy(p, c, s, scheme)
    if result.status.tag is StatusTag.COMPLEX_REJECTED or (strict and not result.is_bound):
        raise UnboundStateError(f"state {s} is {result.status}", result.status)
    eff = effective_params(to_dimensionless(p, c, s), scheme, p.alpha)
    terms = closed_form_terms(eff, p.q, s.n)
    s_exponent = abs(terms.bracket) / 2.0
    if s_exponent == 0.0:
        raise UnboundStateError(f"state {s} sits at threshold (eps = 0)", result.status)
    nu = terms.m - s.n
    r_lower = singular_radius(p) or 0.0
    w = RadialWavefunction(
        state=s,
        s_exponent=s_exponent,
        bracket_exponent=nu,
        jacobi=JacobiParams(2.0 * s_exponent, 2.0 * nu - 1.0),
        q=p.q,
        alpha=p.alpha,
        scheme=scheme,
        energy=result.energy,
        r_lower=r_lower,
        formal=not result.is_bound,
    )
    # pre-scale by the peak so the quadrature sees O(1) values
    probe = np.linspace(r_lower, r_lower + 40.0 * w.decay_length, 4001)
    peak = float(np.max(np.abs(eval_radial(w, probe))))
    if peak > 0.0:
        w = replace(w, norm=1.0 / peak)
    norm, r_cut = normalize(w)
    return replace(w, norm=w.norm * norm, r_cut=r_cut)


def default_node_grid(w: RadialWavefunction, points: int = 10_000) -> np.ndarray:
    r_cut = w.r_cut if w.r_cut is not None else w.r_lower + 40.0 * w.decay_length
    return np.linspace(w.r_lower, r_cut, points + 2)[1:-1]


def node_count(w: RadialWavefunction, r_grid=None) -> int:
    """Strict sign changes of R over the open interval spanned by ``r_grid``."""
    if r_grid is None:
        r_grid = default_node_grid(w)
    vals = np.asarray(eval_radial(w, np.asarray(r_grid, dtype=float)))
    return count_sign_changes(vals)


def count_sign_changes(values, rel_floor: float = 0.0) -> int:
    vals = np.asarray(values, dtype=float)
    if rel_floor > 0.0 and vals.size:
        vals = np.where(np.abs(vals) <= rel_floor * np.abs(vals).max(), 0.0, vals)
    signs = np.sign(vals)
    signs = signs[signs != 0]
    return int(np.count_nonzero(signs[1:] != signs[:-1]))
