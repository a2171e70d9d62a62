"""Numeric Nikiforov-Uvarov engine.

The engine handles equations of hypergeometric type

    psi'' + (tau_tilde / sigma) psi' + (sigma_tilde / sigma^2) psi = 0

with deg(tau_tilde) <= 1 and deg(sigma), deg(sigma_tilde) <= 2. Everything
is carried as ascending coefficient tuples, so ``(c0, c1, c2)`` means
``c0 + c1 s + c2 s^2``.

For a given k the polynomial under the root of

    pi(s) = (sigma' - tau_tilde)/2 +- sqrt(((sigma' - tau_tilde)/2)^2 - sigma_tilde + k sigma)

must be a perfect square. Each coefficient is linear in k, so the
discriminant condition is a quadratic in k and is solved in closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .core import DimensionlessParams
from .errors import AmbiguousRootError, BranchError, ComplexRootError, NoRootError, ParameterError


@dataclass(frozen=True)
class HypergeometricEquation:
    tau_tilde: tuple
    sigma: tuple
    sigma_tilde: tuple

    def __post_init__(self):
        tt = _pad(self.tau_tilde, 2, "tau_tilde")
        sg = _pad(self.sigma, 3, "sigma")
        st = _pad(self.sigma_tilde, 3, "sigma_tilde")
        if not any(sg):
            raise ParameterError("sigma must not vanish identically")
        object.__setattr__(self, "tau_tilde", tt)
        object.__setattr__(self, "sigma", sg)
        object.__setattr__(self, "sigma_tilde", st)

    @property
    def sigma_pp(self) -> float:
        return 2.0 * self.sigma[2]


def _pad(coeffs: Sequence[float], size: int, name: str) -> tuple:
    vals = [float(c) for c in coeffs]
    while len(vals) > size and vals[-1] == 0.0:
        vals.pop()
    if len(vals) > size:
        raise ParameterError(f"{name} has degree above {size - 1}")
    return tuple(vals + [0.0] * (size - len(vals)))


@dataclass(frozen=True)
class QuadraticABC:
    """Coefficients of the quadratic a s^2 + b s + c under the pi(s) root."""

    a: float
    b: float
    c: float

    @property
    def discriminant(self) -> float:
        return self.b * self.b - 4.0 * self.a * self.c


@dataclass(frozen=True)
class KRoot:
    """One root k of the discriminant condition and its perfect-square factor.

    At this k the radicand equals ``(u s + v)^2``.
    """

    k: float
    abc: QuadraticABC
    u: float
    v: float

    @property
    def residual(self) -> float:
        """Discriminant relative to the scale of its two terms."""
        a, b, c = self.abc.a, self.abc.b, self.abc.c
        return abs(self.abc.discriminant) / max(1.0, b * b, abs(4.0 * a * c))


@dataclass(frozen=True)
class PiBranch:
    """A candidate pi(s) with the tau(s) and lambda it induces.

    ``orientation`` is -sign(sigma'') (or +1 when sigma'' = 0). The decaying
    solution requires ``orientation * tau' < 0``; for sigma'' < 0 this is
    the familiar tau' < 0.
    """

    k: float
    pi_coeffs: tuple
    sign: int
    tau_coeffs: tuple
    lam: float
    orientation: int = 1

    @property
    def tau_prime(self) -> float:
        return self.tau_coeffs[1]

    @property
    def is_decaying(self) -> bool:
        return self.orientation * self.tau_prime < 0.0

    def pi_at(self, s):
        return self.pi_coeffs[0] + self.pi_coeffs[1] * np.asarray(s, dtype=float)

    def tau_at(self, s):
        return self.tau_coeffs[0] + self.tau_coeffs[1] * np.asarray(s, dtype=float)


def build_equation(dp: DimensionlessParams, q: float) -> HypergeometricEquation:
    """Radial equation in s = exp(-alpha r) for the deformed family.

    tau_tilde = 1 - q s, sigma = s (1 - q s) and
    sigma_tilde = -(eps q^2 + chi q + beta) s^2 + (2 eps q + chi - eta) s - eps.
    """
    if dp.eps_n is None:
        raise ParameterError("eps_n must be set before building the equation")
    eps, beta, chi, eta = dp.eps_n, dp.beta, dp.chi, dp.eta
    return HypergeometricEquation(
        tau_tilde=(1.0, -q),
        sigma=(0.0, 1.0, -q),
        sigma_tilde=(-eps, 2.0 * eps * q + chi - eta, -(eps * q * q + chi * q + beta)),
    )


def _half_difference(eq: HypergeometricEquation) -> tuple:
    # (sigma' - tau_tilde) / 2
    s0, s1, s2 = eq.sigma
    return (0.5 * (s1 - eq.tau_tilde[0]), 0.5 * (2.0 * s2 - eq.tau_tilde[1]))


def quadratic_abc(eq: HypergeometricEquation, k: float) -> QuadraticABC:
    a0, a1 = _half_difference(eq)
    st, sg = eq.sigma_tilde, eq.sigma
    return QuadraticABC(
        a=a1 * a1 - st[2] + k * sg[2],
        b=2.0 * a0 * a1 - st[1] + k * sg[1],
        c=a0 * a0 - st[0] + k * sg[0],
    )


def _square_root_factor(abc: QuadraticABC) -> tuple:
    a, b, c = abc.a, abc.b, abc.c
    if c >= a and c > 0.0:
        v = math.sqrt(c)
        return b / (2.0 * v), v
    if a > 0.0:
        u = math.sqrt(a)
        return u, b / (2.0 * u)
    if a == 0.0 and c == 0.0:
        return 0.0, 0.0
    raise ComplexRootError(f"radicand {a}s^2 + {b}s + {c} is negative, pi(s) is complex")


def solve_k(eq: HypergeometricEquation) -> tuple:
    """Both roots k of the perfect-square condition, larger first.

    Raises
    ------
    ComplexRootError
        If the quadratic in k has no real root, or the radicand at a real
        root is a negative perfect square.
    """
    base = quadratic_abc(eq, 0.0)
    p2, p1, p0 = base.a, base.b, base.c
    r2, r1, r0 = eq.sigma[2], eq.sigma[1], eq.sigma[0]
    qa = r1 * r1 - 4.0 * r2 * r0
    qb = 2.0 * p1 * r1 - 4.0 * (p2 * r0 + r2 * p0)
    qc = p1 * p1 - 4.0 * p2 * p0
    if qa == 0.0:
        if qb == 0.0:
            raise ComplexRootError("discriminant condition does not depend on k")
        roots = [-qc / qb]
    else:
        disc = qb * qb - 4.0 * qa * qc
        scale = max(qb * qb, abs(4.0 * qa * qc), 1e-300)
        if disc < 0.0:
            if disc > -1e-14 * scale:
                disc = 0.0
            else:
                raise ComplexRootError(
                    f"k is complex: discriminant {disc!r} < 0 (no real NU solution)"
                )
        root = math.sqrt(disc)
        # numerically stable pair
        t = -0.5 * (qb + math.copysign(root, qb)) if qb != 0.0 else 0.5 * root
        if t == 0.0:
            roots = [0.0, 0.0]
        else:
            roots = [t / qa, qc / t]
    out = []
    for k in sorted(roots, reverse=True):
        abc = quadratic_abc(eq, k)
        u, v = _square_root_factor(abc)
        out.append(KRoot(k=k, abc=abc, u=u, v=v))
    if len(out) == 1:
        out.append(out[0])
    return tuple(out)


def branch_candidates(eq: HypergeometricEquation, roots: Optional[Sequence[KRoot]] = None) -> tuple:
    """The (up to four) pi(s) choices: each k with either sign of the root."""
    if roots is None:
        roots = solve_k(eq)
    a0, a1 = _half_difference(eq)
    orientation = -1 if eq.sigma_pp > 0.0 else 1
    seen = set()
    out = []
    for root in roots:
        for sign in (1, -1):
            pi = (a0 + sign * root.v, a1 + sign * root.u)
            key = (root.k, pi)
            if key in seen:
                continue
            seen.add(key)
            tau = (eq.tau_tilde[0] + 2.0 * pi[0], eq.tau_tilde[1] + 2.0 * pi[1])
            out.append(
                PiBranch(
                    k=root.k,
                    pi_coeffs=pi,
                    sign=sign,
                    tau_coeffs=tau,
                    lam=root.k + pi[1],
                    orientation=orientation,
                )
            )
    return tuple(out)


def select_branch(candidates: Sequence[PiBranch]) -> PiBranch:
    """Pick the physical branch.

    A branch qualifies when ``orientation * tau' < 0``. Among qualifying
    branches, those with pi(0) >= 0 (non-negative s-exponent, so the solution
    vanishes as r -> infinity) are preferred; ties go to the most negative
    ``orientation * tau'``.

    Raises
    ------
    BranchError
        If no candidate qualifies.
    """
    valid = [c for c in candidates if c.is_decaying]
    if not valid:
        raise BranchError("no branch has a decreasing tau(s); no decaying solution")
    return min(valid, key=lambda c: (c.pi_coeffs[0] < 0.0, c.orientation * c.tau_prime))


def lambda_n(eq: HypergeometricEquation, branch: PiBranch, n: int) -> float:
    """-n tau' - n (n - 1) sigma'' / 2."""
    if n < 0:
        raise ParameterError("n must be non-negative")
    if n == 0:
        return 0.0
    return -n * branch.tau_prime - 0.5 * n * (n - 1) * eq.sigma_pp


def quantization_mismatch(dp: DimensionlessParams, q: float, n: int, eps: float) -> float:
    """lambda - lambda_n on the selected branch at trial eps (NaN if no branch)."""
    eq = build_equation(dp.with_eps(eps), q)
    try:
        branch = select_branch(branch_candidates(eq))
    except BranchError:
        return math.nan
    return branch.lam - lambda_n(eq, branch, n)


def default_eps_max(dp: DimensionlessParams, q: float) -> float:
    return 4.0 * (abs(dp.chi) / abs(q) + abs(dp.beta) / (q * q) + 1.0) ** 2


def _bisect(f, lo, flo, hi, tol):
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm < 0.0) == (flo < 0.0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def quantize(
    dp: DimensionlessParams,
    q: float,
    n: int,
    eps_max: Optional[float] = None,
    steps: int = 512,
    tol: float = 1e-13,
) -> float:
    """Solve lambda(eps) = lambda_n(eps) for eps >= 0 by scan and bisection.

    Parameters
    ----------
    dp : DimensionlessParams
        beta, chi, eta; any eps_n already present is ignored.
    q : float
        Deformation parameter.
    n : int
        Radial quantum number.
    eps_max : float, optional
        Upper end of the scan. Defaults to ``4 (|chi|/|q| + |beta|/q^2 + 1)^2``.
    steps : int
        Number of scan intervals.
    tol : float
        Absolute bisection tolerance on eps (stops earlier at float resolution).

    Raises
    ------
    ComplexRootError
        If pi(s) is complex for every eps > 0.
    NoRootError
        No sign change of the mismatch in the bracket.
    AmbiguousRootError
        More than one sign change; the bisected roots are attached.
    """
    if n < 0:
        raise ParameterError("n must be non-negative")
    if eps_max is None:
        eps_max = default_eps_max(dp, q)

    complex_error = None

    def f(eps):
        nonlocal complex_error
        try:
            return quantization_mismatch(dp, q, n, eps)
        except ComplexRootError as exc:
            complex_error = exc
            return math.nan

    grid = np.linspace(0.0, eps_max, steps + 1)
    vals = [f(e) for e in grid]
    if all(math.isnan(v) for v in vals[1:]) and complex_error is not None:
        raise complex_error
    roots = []
    for i in range(steps):
        a, b = vals[i], vals[i + 1]
        if math.isnan(a) or math.isnan(b):
            continue
        if a == 0.0:
            roots.append(float(grid[i]))
        elif a * b < 0.0:
            roots.append(_bisect(f, float(grid[i]), a, float(grid[i + 1]), tol))
    if vals[-1] == 0.0:
        roots.append(float(grid[-1]))
    if not roots:
        raise NoRootError(
            f"no sign change of lambda - lambda_n on [0, {eps_max:.6g}] for n={n}"
        )
    if len(roots) > 1:
        raise AmbiguousRootError(f"{len(roots)} roots in [0, {eps_max:.6g}]: {roots}", roots)
    return roots[0]
