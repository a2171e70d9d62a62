"""Bound states of the generalized shifted Hulthen potential.

Closed-form energies and wavefunctions from the Nikiforov-Uvarov method,
a numeric NU engine to re-derive the quantization, and finite-difference
and Numerov oracles for the radial equation.
"""

from .core import (
    NATURAL,
    DimensionlessParams,
    PhysicalConstants,
    PotentialParams,
    StateIndex,
    centrifugal_factor,
    energy_from_epsilon,
    to_dimensionless,
)
from .potentials import (
    SCHEME1,
    SCHEME2,
    SCHEME3,
    ApproximationScheme,
    PotentialKind,
    SchemeTag,
    eval_centrifugal_approx,
    eval_potential,
    sample_curve,
    singular_radius,
)
from .spectrum import (
    BoundStateStatus,
    EnergyResult,
    StatusTag,
    energy,
    energy_approx1,
    energy_approx2,
    energy_approx3,
    energy_hulthen,
    energy_woods_saxon,
    epsilon_closed_form,
    n_max,
    validity,
)

__all__ = [
    "NATURAL",
    "DimensionlessParams",
    "PhysicalConstants",
    "PotentialParams",
    "StateIndex",
    "centrifugal_factor",
    "energy_from_epsilon",
    "to_dimensionless",
    "SCHEME1",
    "SCHEME2",
    "SCHEME3",
    "ApproximationScheme",
    "PotentialKind",
    "SchemeTag",
    "eval_centrifugal_approx",
    "eval_potential",
    "sample_curve",
    "singular_radius",
    "BoundStateStatus",
    "EnergyResult",
    "StatusTag",
    "energy",
    "energy_approx1",
    "energy_approx2",
    "energy_approx3",
    "energy_hulthen",
    "energy_woods_saxon",
    "epsilon_closed_form",
    "n_max",
    "validity",
]

__version__ = "0.1.0"
