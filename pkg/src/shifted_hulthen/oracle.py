"""Independent numerical solvers for the radial equation.

The equation solved is

    -u'' + W(r) u = k^2 u,   W = (2 mu / hbar^2) V(r) + eta * C(r),   E = hbar^2 k^2 / (2 mu)

where C(r) is either the exact 1/r^2 or one of the scheme approximants.
Two methods are provided:

* a 3-point finite-difference matrix, diagonalized by Sturm bisection plus
  inverse iteration, with grid doubling and Richardson extrapolation;
* a Numerov shooting refiner that bisects on the matching-point Casoratian.

The left Dirichlet node sits at the singular radius (0 for q <= 1, b ln q
for q > 1) and W is never evaluated there.
"""

from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.linalg import solve_banded

from . import _kernels
from .core import PhysicalConstants, PotentialParams, StateIndex, centrifugal_factor
from .errors import ConvergenceError, NoRootError, ParameterError, SingularityError
from .potentials import (
    ApproximationScheme,
    PotentialKind,
    SchemeTag,
    eval_centrifugal_approx,
    eval_potential,
    singular_radius,
)
from .spectrum import EnergyResult, energy

log = logging.getLogger(__name__)

DEFAULT_POINTS = 20001
NUMEROV_POINTS = 40001
DECAY_LENGTHS = 40.0


@dataclass(frozen=True)
class RadialGrid:
    """Uniform grid r_i = r_min + i h, i = 0 .. n_points - 1 (both ends Dirichlet)."""

    r_min: float
    r_max: float
    n_points: int

    def __post_init__(self):
        if not (math.isfinite(self.r_min) and math.isfinite(self.r_max)):
            raise ParameterError("grid ends must be finite")
        if self.r_min < 0.0 or not self.r_min < self.r_max:
            raise ParameterError(f"need 0 <= r_min < r_max, got {self.r_min!r}, {self.r_max!r}")
        if int(self.n_points) != self.n_points or self.n_points < 3:
            raise ParameterError("n_points must be an integer >= 3")
        object.__setattr__(self, "n_points", int(self.n_points))

    @property
    def spacing(self) -> float:
        return (self.r_max - self.r_min) / (self.n_points - 1)

    @property
    def r(self) -> np.ndarray:
        return self.r_min + self.spacing * np.arange(self.n_points)

    def doubled(self) -> "RadialGrid":
        return RadialGrid(self.r_min, self.r_max, 2 * self.n_points - 1)


@dataclass(frozen=True)
class CentrifugalMode:
    """Exact 1/r^2 barrier, or a scheme approximant in its place."""

    scheme: Optional[ApproximationScheme] = None

    @property
    def exact(self) -> bool:
        return self.scheme is None

    @property
    def label(self) -> str:
        return "exact" if self.scheme is None else self.scheme.label

    @classmethod
    def approximated(cls, scheme: ApproximationScheme) -> "CentrifugalMode":
        return cls(scheme)


EXACT = CentrifugalMode()


def effective_w(p: PotentialParams, c: PhysicalConstants, s: StateIndex, mode: CentrifugalMode, r):
    """W(r) = (2 mu / hbar^2) V(r) + eta C(r)."""
    r = np.asarray(r, dtype=float)
    v = eval_potential(PotentialKind.GENERALIZED_SHIFTED_HULTHEN, p, r)
    eta = centrifugal_factor(s)
    out = np.asarray(v, dtype=float) / c.kinetic_scale
    if eta != 0.0:
        cent = 1.0 / r**2 if mode.exact else eval_centrifugal_approx(mode.scheme, p, r)
        out = out + eta * cent
    return out


def threshold_energy(p: PotentialParams, c: PhysicalConstants, s: StateIndex, mode: CentrifugalMode) -> float:
    """Limit of hbar^2 W / (2 mu) as r -> infinity (nonzero only for scheme 3)."""
    if mode.scheme is not None and mode.scheme.tag is SchemeTag.SCHEME3:
        return c.kinetic_scale * centrifugal_factor(s) * mode.scheme.c0 * p.alpha**2
    return 0.0


def _decay_rmax(p, c, s, mode, e_ref):
    gap = threshold_energy(p, c, s, mode) - e_ref
    if not gap > 0.0:
        return None
    kappa = math.sqrt(gap / c.kinetic_scale)
    return DECAY_LENGTHS / kappa


def default_grid(
    p: PotentialParams,
    c: PhysicalConstants,
    s: StateIndex,
    mode: CentrifugalMode,
    n_points: int = DEFAULT_POINTS,
    r_max: Optional[float] = None,
) -> RadialGrid:
    """Grid from the pole (or 0) out to 40 decay lengths of level ``s.n``.

    The decay length uses the formal closed-form energy of the state under
    the mode's scheme (scheme 1 for exact mode). If that is unavailable the
    range falls back to 200.
    """
    r_min = singular_radius(p) or 0.0
    if r_max is None:
        span = None
        res = energy(p, c, s, mode.scheme) if mode.scheme is not None else energy(p, c, s)
        if res.eps_n is not None and res.eps_n != 0.0:
            eps = abs(res.terms.eps) if res.terms is not None else abs(res.eps_n)
            span = DECAY_LENGTHS / (p.alpha * math.sqrt(eps)) if eps > 0 else None
        r_max = r_min + (span if span is not None else 200.0)
    return RadialGrid(r_min, r_max, n_points)


@dataclass(frozen=True)
class EffectiveHamiltonian:
    """Symmetric tridiagonal -d^2/dr^2 + W on the interior nodes, in units of k^2."""

    grid: RadialGrid
    diag: np.ndarray
    offdiag: float
    mode: CentrifugalMode
    kinetic_scale: float
    tail_ok: bool = True

    @property
    def size(self) -> int:
        return self.diag.size

    @property
    def norm_bound(self) -> float:
        return float(np.max(np.abs(self.diag)) + 2.0 * abs(self.offdiag))


def build_hamiltonian(
    p: PotentialParams,
    c: PhysicalConstants,
    s: StateIndex,
    mode: CentrifugalMode = EXACT,
    grid: Optional[RadialGrid] = None,
    e_expected: Optional[float] = None,
) -> EffectiveHamiltonian:
    """Finite-difference Hamiltonian on the interior of ``grid``.

    Raises
    ------
    SingularityError
        If a q > 1 pole lies inside the grid (a pole exactly at r_min is the
        intended wall and is fine).
    """
    if grid is None:
        grid = default_grid(p, c, s, mode)
    pole = singular_radius(p)
    if pole is not None and grid.r_min < pole:
        raise SingularityError(f"pole at r={pole!r} lies inside the grid [{grid.r_min!r}, {grid.r_max!r}]")
    h = grid.spacing
    r = grid.r[1:-1]
    w = effective_w(p, c, s, mode, r)
    diag = 2.0 / (h * h) + w
    tail_ok = True
    if e_expected is not None and e_expected != 0.0:
        w_end = float(effective_w(p, c, s, mode, grid.r_max)) * c.kinetic_scale
        w_end -= threshold_energy(p, c, s, mode)
        tail_ok = abs(w_end) < 1e-10 * abs(e_expected)
        if not tail_ok:
            log.debug("W(r_max) = %g is not negligible against E = %g", w_end, e_expected)
    return EffectiveHamiltonian(grid, diag, -1.0 / (h * h), mode, c.kinetic_scale, tail_ok)


@dataclass(frozen=True)
class Eigenpair:
    energy: float
    vector: np.ndarray  # on the full grid, zero at both ends, sum(v^2) h = 1


def _inverse_iteration(hm: EffectiveHamiltonian, lam: float, max_iter: int = 8) -> np.ndarray:
    n = hm.size
    ab = np.empty((3, n))
    ab[0, :] = hm.offdiag
    ab[2, :] = hm.offdiag
    # nudge off the eigenvalue so the factorization stays finite
    shift = lam + 4.0 * np.finfo(float).eps * hm.norm_bound
    ab[1, :] = hm.diag - shift
    x = np.ones(n) / math.sqrt(n)
    target = 1e-8 * hm.norm_bound
    for _ in range(max_iter):
        x = solve_banded((1, 1), ab, x, check_finite=False)
        x /= np.linalg.norm(x)
        resid = hm.diag * x - lam * x
        resid[1:] += hm.offdiag * x[:-1]
        resid[:-1] += hm.offdiag * x[1:]
        if np.linalg.norm(resid) <= target:
            # one polishing step past the target
            x = solve_banded((1, 1), ab, x, check_finite=False)
            return x / np.linalg.norm(x)
    raise ConvergenceError("inverse iteration did not reach the residual target")


def _orient(v: np.ndarray) -> np.ndarray:
    big = np.abs(v) > 1e-3 * np.abs(v).max()
    first = int(np.argmax(big))
    return v if v[first] > 0 else -v


def solve_lowest(hm: EffectiveHamiltonian, k: int, vectors: bool = True) -> tuple:
    """The k lowest (energy, eigenvector) pairs, ascending.

    Eigenvalues come from Sturm bisection to a 1e-12 relative bracket;
    eigenvectors from inverse iteration, scaled so that sum(v^2) h = 1 and
    the first significant lobe is positive.
    """
    if k < 1 or k > hm.size:
        raise ParameterError(f"k must be in 1..{hm.size}")
    off = np.full(hm.size - 1, hm.offdiag)
    lams = _kernels.bisect_lowest(hm.diag, off, k, 1e-12, 400)
    if not np.all(np.isfinite(lams)):
        raise ConvergenceError("Sturm bisection failed to bracket the spectrum")
    h = hm.grid.spacing
    out = []
    for lam in lams:
        vec = None
        if vectors:
            x = _orient(_inverse_iteration(hm, float(lam)))
            vec = np.zeros(hm.grid.n_points)
            vec[1:-1] = x / math.sqrt(h)
        out.append(Eigenpair(float(lam) * hm.kinetic_scale, vec))
    return tuple(out)


@dataclass(frozen=True)
class LevelSolution:
    """FD energies on a grid and on successive doublings of it.

    ``levels[i]`` holds the energies on ``grids[i]``. The reported value is
    the Richardson extrapolation (4 E_fine - E_coarse) / 3 of the last two
    grids. Its convergence delta is the change of that value between the
    last two grid pairs, or the raw fine-minus-coarse change when only one
    doubling was run.
    """

    grids: tuple
    levels: tuple
    pairs: tuple

    @property
    def grid(self) -> RadialGrid:
        return self.grids[0]

    @property
    def coarse(self) -> tuple:
        return self.levels[-2]

    @property
    def fine(self) -> tuple:
        return self.levels[-1]

    def _richardson(self, i: int) -> tuple:
        return tuple((4.0 * f - c) / 3.0 for c, f in zip(self.levels[i], self.levels[i + 1]))

    @property
    def richardson(self) -> tuple:
        return self._richardson(len(self.levels) - 2)

    @property
    def raw_delta(self) -> tuple:
        return tuple(f - c for c, f in zip(self.coarse, self.fine))

    @property
    def convergence_delta(self) -> tuple:
        if len(self.levels) < 3:
            return self.raw_delta
        prev = self._richardson(len(self.levels) - 3)
        return tuple(b - a for a, b in zip(prev, self.richardson))


def solve_levels(
    p: PotentialParams,
    c: PhysicalConstants,
    s: StateIndex,
    mode: CentrifugalMode = EXACT,
    k: Optional[int] = None,
    grid: Optional[RadialGrid] = None,
    vectors: bool = False,
    doublings: int = 1,
) -> LevelSolution:
    """Lowest ``k`` levels (default s.n + 1) on ``grid`` and ``doublings`` refinements."""
    if k is None:
        k = s.n + 1
    if doublings < 1:
        raise ParameterError("need at least one doubling")
    if grid is None:
        grid = default_grid(p, c, s, mode)
    grids = [grid]
    for _ in range(doublings):
        grids.append(grids[-1].doubled())
    levels = []
    pairs = ()
    for i, g in enumerate(grids):
        found = solve_lowest(build_hamiltonian(p, c, s, mode, g), k, vectors=vectors and i == 0)
        if i == 0:
            pairs = found
        levels.append(tuple(e.energy for e in found))
    return LevelSolution(tuple(grids), tuple(levels), pairs)


def _origin_behaviour(p, c, s, mode, r0, h):
    # W ~ C2 / x^2 + C1 / x near the wall, x = r - r0
    d1 = 1e-3 * h
    g1 = float(effective_w(p, c, s, mode, r0 + d1)) * d1 * d1
    g2 = float(effective_w(p, c, s, mode, r0 + 2.0 * d1)) * 4.0 * d1 * d1
    c2 = 2.0 * g1 - g2
    c1 = (g2 - g1) / d1
    if abs(c2) < 1e-9 * max(1.0, abs(c1) * h):
        c2 = 0.0
    return c2, c1


def _shooting_setup(p, c, s, mode, grid):
    h = grid.spacing
    r = grid.r
    w = np.empty(grid.n_points)
    w[1:] = effective_w(p, c, s, mode, r[1:])
    w[0] = 0.0
    c2, c1 = _origin_behaviour(p, c, s, mode, grid.r_min, h)
    return w, c2, c1


def _mismatch(w, e_over_k, h, m, c2, c1):
    f = w - e_over_k
    if c2 == 0.0:
        # u'(0) from the local series u = x (1 + c1 x / 2)
        f0u0 = c1 / (1.0 + 0.5 * c1 * h)
        uo = _kernels.numerov_outward(f, h, m, 0, 1.0, c1, f0u0)
    else:
        nu = 0.5 + math.sqrt(0.25 + c2)
        uo = _kernels.numerov_outward(f, h, m, 1, nu, c1 / (2.0 * nu), 0.0)
    ui = _kernels.numerov_inward(f, h, m)
    cc = h * h / 12.0
    yo0, yo1 = (1.0 - cc * f[m]) * uo[m], (1.0 - cc * f[m + 1]) * uo[m + 1]
    yi0, yi1 = (1.0 - cc * f[m]) * ui[m], (1.0 - cc * f[m + 1]) * ui[m + 1]
    scale = np.abs(uo).max() * np.abs(ui[m:]).max()
    return (yo0 * yi1 - yo1 * yi0) / scale


def numerov_refine(
    p: PotentialParams,
    c: PhysicalConstants,
    s: StateIndex,
    mode: CentrifugalMode,
    e_bracket: Sequence[float],
    n_points: int = NUMEROV_POINTS,
    r_max: Optional[float] = None,
    tol: float = 1e-10,
) -> float:
    """Shoot from both ends with Numerov steps and bisect on the Casoratian.

    The outward solution starts from the wall with its local power-law
    behaviour; the inward one starts from u(r_max) = 0. They are matched at
    the outermost classical turning point of the bracket midpoint.

    Raises
    ------
    NoRootError
        If the bracket reaches the continuum threshold or the mismatch does
        not change sign across it.
    """
    lo, hi = sorted(float(e) for e in e_bracket)
    e_th = threshold_energy(p, c, s, mode)
    if hi >= e_th:
        raise NoRootError(f"bracket [{lo!r}, {hi!r}] reaches the continuum threshold {e_th!r}")
    r_min = singular_radius(p) or 0.0
    if r_max is None:
        r_max = r_min + _decay_rmax(p, c, s, mode, hi)
    grid = RadialGrid(r_min, r_max, n_points)
    h = grid.spacing
    w, c2, c1 = _shooting_setup(p, c, s, mode, grid)
    mid = 0.5 * (lo + hi) / c.kinetic_scale
    inside = np.nonzero(w[1:] - mid < 0.0)[0]
    m = int(inside[-1]) + 1 if inside.size else grid.n_points // 3
    m = min(max(m, 10), grid.n_points - 10)

    def g(e):
        return _mismatch(w, e / c.kinetic_scale, h, m, c2, c1)

    glo, ghi = g(lo), g(hi)
    if glo == 0.0:
        return lo
    if ghi == 0.0:
        return hi
    if glo * ghi > 0.0:
        raise NoRootError(f"Casoratian has no sign change on [{lo!r}, {hi!r}]")
    samples = [g(e) for e in np.linspace(lo, hi, 17)]
    changes = sum(1 for a, b in zip(samples[:-1], samples[1:]) if a * b < 0.0)
    if changes > 1:
        warnings.warn(f"bracket [{lo!r}, {hi!r}] holds {changes} sign changes", RuntimeWarning)
    while hi - lo > tol:
        e = 0.5 * (lo + hi)
        if e <= lo or e >= hi:
            break
        ge = g(e)
        if ge == 0.0:
            return e
        if (ge < 0.0) == (glo < 0.0):
            lo, glo = e, ge
        else:
            hi = e
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class ComparisonRow:
    n: int
    analytic: Optional[float]
    oracle: float
    abs_error: Optional[float]
    rel_error: Optional[float]
    status: str


@dataclass(frozen=True)
class OracleReport:
    energies: tuple
    convergence_delta: tuple
    comparison: tuple
    richardson: tuple = field(default=())

    @property
    def max_abs_error(self) -> float:
        errs = [row.abs_error for row in self.comparison if row.abs_error is not None]
        return max(errs) if errs else math.nan


def compare(
    analytic: Sequence[EnergyResult],
    oracle_energies: Sequence[float],
    convergence_delta: Optional[Sequence[float]] = None,
    richardson: Optional[Sequence[float]] = None,
) -> OracleReport:
    """Pair closed-form results with oracle levels, both ordered by n."""
    if len(analytic) != len(oracle_energies):
        raise ParameterError(
            f"{len(analytic)} analytic levels against {len(oracle_energies)} oracle levels"
        )
    energies = tuple(float(e) for e in oracle_energies)
    if convergence_delta is None:
        convergence_delta = tuple(math.nan for _ in energies)
    if len(convergence_delta) != len(energies):
        raise ParameterError("convergence_delta length mismatch")
    rows = []
    for i, (res, e) in enumerate(zip(analytic, energies)):
        n = res.state.n if res.state is not None else i
        if res.energy is None:
            rows.append(ComparisonRow(n, None, e, None, None, str(res.status.tag.value)))
            continue
        err = abs(res.energy - e)
        rel = err / abs(res.energy) if res.energy != 0.0 else math.inf
        rows.append(ComparisonRow(n, res.energy, e, err, rel, str(res.status.tag.value)))
    return OracleReport(
        energies=energies,
        convergence_delta=tuple(float(d) for d in convergence_delta),
        comparison=tuple(rows),
        richardson=tuple(richardson) if richardson is not None else (),
    )


def run_oracle(
    p: PotentialParams,
    c: PhysicalConstants,
    l: int,
    d: int,
    mode: CentrifugalMode,
    levels: int,
    grid: Optional[RadialGrid] = None,
    closed_form_scheme: Optional[ApproximationScheme] = None,
) -> OracleReport:
    """FD levels 0..levels-1 against the closed form of ``closed_form_scheme``.

    Oracle energies are Richardson values from two doublings of ``grid``; the
    closed form defaults to the mode's own scheme (scheme 1 for exact mode).
    """
    top = StateIndex(levels - 1, l, d)
    sol = solve_levels(p, c, top, mode, k=levels, grid=grid, doublings=2)
    cf = closed_form_scheme if closed_form_scheme is not None else mode.scheme
    analytic = [
        energy(p, c, StateIndex(n, l, d), cf) if cf is not None else energy(p, c, StateIndex(n, l, d))
        for n in range(levels)
    ]
    return compare(analytic, sol.richardson, sol.convergence_delta, sol.richardson)
