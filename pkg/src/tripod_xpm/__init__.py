"""Steady-state double-EIT and cross-phase modulation in a tripod medium."""

from .kernels import BACKEND
from .model import (
    DecayRates,
    Drives,
    FieldDrive,
    Populations,
    Role,
    TransitionCoefficients,
    TripodParams,
    reference_params,
)
from .susceptibility import SingularPointError, chi_grid, chi_total

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DecayRates",
    "Drives",
    "FieldDrive",
    "Populations",
    "Role",
    "SingularPointError",
    "TransitionCoefficients",
    "TripodParams",
    "chi_grid",
    "chi_total",
    "reference_params",
]
