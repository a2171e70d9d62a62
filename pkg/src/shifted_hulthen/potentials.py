"""Potentials of the shifted Hulthen family and 1/r^2 approximants.

All evaluators accept a scalar or an array of radii and return the same
shape. The q-deformed denominator ``1 - q exp(-r/b)`` is formed with
``expm1`` so that it keeps full relative precision near r = 0 (q = 1) and
near the pole r = b ln q (q > 1).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .core import PotentialParams
from .errors import DomainError, ParameterError, SingularityError

DEFAULT_FLOOR = 1e-12


class PotentialKind(enum.Enum):
    GENERALIZED_SHIFTED_HULTHEN = "generalized_shifted_hulthen"
    SHIFTED_HULTHEN = "shifted_hulthen"
    HULTHEN = "hulthen"
    WOODS_SAXON = "woods_saxon"
    SPECIAL_HULTHEN = "special_hulthen"


class SchemeTag(enum.IntEnum):
    SCHEME1 = 1
    SCHEME2 = 2
    SCHEME3 = 3


EQ4_READINGS = ("printed", "corrected")


@dataclass(frozen=True)
class ApproximationScheme:
    """Which 1/r^2 approximant to use.

    Parameters
    ----------
    tag : SchemeTag
        1: ``s / (b^2 (1-qs)^2)``.
        2: ``(kappa s / (1-qs) + s^2 / (1-qs)^2) / b^2``.
        3: ``(c0 + s / (1-qs)^2) / b^2``.
    c0 : float
        Constant floor of scheme 3. Ignored by the others.
    eq4_reading : {'printed', 'corrected'}
        Scheme 2 numerator. ``'printed'`` uses ``exp((1-r)/b)``, i.e.
        ``kappa = exp(1/b)``; ``'corrected'`` uses ``exp(-r/b)``, i.e.
        ``kappa = 1``. Ignored by schemes 1 and 3.
    """

    tag: SchemeTag = SchemeTag.SCHEME1
    c0: float = 1.0 / 12.0
    eq4_reading: str = "printed"

    def __post_init__(self):
        try:
            tag = SchemeTag(int(self.tag))
        except ValueError as exc:
            raise ParameterError(f"unknown scheme {self.tag!r}") from exc
        object.__setattr__(self, "tag", tag)
        c0 = float(self.c0)
        if not math.isfinite(c0):
            raise ParameterError(f"c0 must be finite, got {self.c0!r}")
        object.__setattr__(self, "c0", c0)
        if self.eq4_reading not in EQ4_READINGS:
            raise ParameterError(f"eq4_reading must be one of {EQ4_READINGS}")

    def kappa(self, alpha: float) -> float:
        """Scheme-2 numerator factor multiplying exp(-r/b)."""
        return math.exp(alpha) if self.eq4_reading == "printed" else 1.0

    @property
    def label(self) -> str:
        return f"approx{int(self.tag)}"


SCHEME1 = ApproximationScheme(SchemeTag.SCHEME1)
SCHEME2 = ApproximationScheme(SchemeTag.SCHEME2)
SCHEME3 = ApproximationScheme(SchemeTag.SCHEME3)
ALL_SCHEMES = (SCHEME1, SCHEME2, SCHEME3)


def scheme(tag: int, c0: float = 1.0 / 12.0, eq4_reading: str = "printed") -> ApproximationScheme:
    return ApproximationScheme(SchemeTag(int(tag)), c0, eq4_reading)


def singular_radius(p: PotentialParams) -> Optional[float]:
    """Radius where 1 - q exp(-r/b) vanishes, or None if it never does for r > 0."""
    if p.q > 1.0:
        return p.b * math.log(p.q)
    return None


def _radii(r):
    arr = np.asarray(r, dtype=float)
    if np.any(~(arr > 0.0)):
        raise DomainError("radius must be positive")
    return arr


def _denominator(q: float, b: float, r: np.ndarray) -> np.ndarray:
    if q > 0.0:
        # 1 - q e^{-r/b} = -expm1(ln q - r/b)
        return -np.expm1(math.log(q) - r / b)
    return 1.0 - q * np.exp(-r / b)


def _checked_denominator(q, b, r, floor):
    den = _denominator(q, b, r)
    if np.any(np.abs(den) < floor):
        raise SingularityError(
            f"|1 - q exp(-r/b)| below {floor:g} (q={q!r}, pole at r={b * math.log(q) if q > 1 else float('nan')!r})"
        )
    return den


def _shape(arr, out):
    return float(out) if np.ndim(arr) == 0 else out


def eval_potential(kind: PotentialKind, p: PotentialParams, r, floor: float = DEFAULT_FLOOR):
    """Potential value at ``r`` for the chosen member of the family.

    ``HULTHEN`` and ``WOODS_SAXON`` read ``p.v0`` as the well depth, ignore
    ``p.v1`` and ``p.q``, and give ``-V0 s / (1 -+ s)``. ``SHIFTED_HULTHEN``
    and ``SPECIAL_HULTHEN`` pin q = 1; the special variant also drops the V1
    term and flips the sign of the shifted depth.
    """
    kind = PotentialKind(kind)
    arr = _radii(r)
    s = np.exp(-arr / p.b)
    shifted = p.v0 + 0.5 * p.alpha * p.alpha
    if kind is PotentialKind.GENERALIZED_SHIFTED_HULTHEN:
        den = _checked_denominator(p.q, p.b, arr, floor)
        out = shifted * s / den + p.v1 * (s / den) ** 2
    elif kind is PotentialKind.SHIFTED_HULTHEN:
        den = _checked_denominator(1.0, p.b, arr, floor)
        out = shifted * s / den + p.v1 * (s / den) ** 2
    elif kind is PotentialKind.SPECIAL_HULTHEN:
        den = _checked_denominator(1.0, p.b, arr, floor)
        out = -shifted * s / den
    elif kind is PotentialKind.HULTHEN:
        den = _checked_denominator(1.0, p.b, arr, floor)
        out = -p.v0 * s / den
    else:
        out = -p.v0 * s / (1.0 + s)
    return _shape(arr, out)


def eval_centrifugal_approx(
    scheme: ApproximationScheme, p: PotentialParams, r, floor: float = DEFAULT_FLOOR
):
    """Approximation to 1/r^2 used in place of the centrifugal barrier."""
    arr = _radii(r)
    s = np.exp(-arr / p.b)
    den = _checked_denominator(p.q, p.b, arr, floor)
    a2 = p.alpha * p.alpha
    if scheme.tag is SchemeTag.SCHEME1:
        out = a2 * s / den**2
    elif scheme.tag is SchemeTag.SCHEME2:
        out = a2 * (scheme.kappa(p.alpha) * s / den + (s / den) ** 2)
    else:
        out = a2 * (scheme.c0 + s / den**2)
    return _shape(arr, out)


def inverse_square(r):
    arr = _radii(r)
    return _shape(arr, 1.0 / arr**2)


@dataclass(frozen=True)
class CurveSample:
    rows: tuple
    skipped: tuple = field(default=())

    @property
    def r(self) -> np.ndarray:
        return np.array([row[0] for row in self.rows])

    @property
    def values(self) -> np.ndarray:
        return np.array([row[1] for row in self.rows])


def sample_curve(
    target: Union[PotentialKind, ApproximationScheme],
    p: PotentialParams,
    r_grid,
    floor: float = DEFAULT_FLOOR,
) -> CurveSample:
    """Evaluate a potential or approximant on a grid, skipping singular points.

    Returns a :class:`CurveSample` whose ``skipped`` entries are
    ``(r, reason)`` pairs for grid points too close to a pole.
    """
    grid = np.asarray(r_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise ParameterError("r_grid must be a non-empty 1-D sequence")
    if np.any(grid <= 0.0):
        raise DomainError("r_grid must be positive")
    if np.any(np.diff(grid) <= 0.0):
        raise ParameterError("r_grid must be strictly increasing")
    q = 1.0 if isinstance(target, PotentialKind) and target in (
        PotentialKind.SHIFTED_HULTHEN, PotentialKind.SPECIAL_HULTHEN, PotentialKind.HULTHEN
    ) else p.q
    if isinstance(target, PotentialKind) and target is PotentialKind.WOODS_SAXON:
        bad = np.zeros(grid.shape, dtype=bool)
    else:
        bad = np.abs(_denominator(q, p.b, grid)) < floor
    good = grid[~bad]
    if isinstance(target, ApproximationScheme):
        vals = eval_centrifugal_approx(target, p, good, floor) if good.size else np.empty(0)
    else:
        vals = eval_potential(target, p, good, floor) if good.size else np.empty(0)
    rows = tuple(zip(good.tolist(), np.atleast_1d(vals).tolist()))
    skipped = tuple((float(x), "singular radius") for x in grid[bad])
    return CurveSample(rows=rows, skipped=skipped)
