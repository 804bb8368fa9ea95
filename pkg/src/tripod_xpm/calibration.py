"""Power, intensity, field amplitude and Rabi frequency conversions.

Beams are Gaussian and characterised by their 1/e intensity diameter; the
on-axis peak intensity is used throughout.  Powers are in W, diameters in cm,
intensities in W/cm^2 and Rabi frequencies in MHz (``Omega / 2 pi``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .model import C_LIGHT, EPS0, HBAR, RB_D1_DIPOLE, TWO_PI_MHZ


@dataclass(frozen=True)
class BeamSpec:
    power: float
    diameter_1e: float = 0.1

    def __post_init__(self):
        if not (math.isfinite(self.power) and self.power >= 0):
            raise ValueError(f"power must be >= 0, got {self.power}")
        if not (math.isfinite(self.diameter_1e) and self.diameter_1e > 0):
            raise ValueError(f"diameter_1e must be > 0, got {self.diameter_1e}")


def peak_intensity(beam: BeamSpec) -> float:
    """``I0 = 4 P / (pi d^2)`` in W/cm^2."""
    return 4.0 * beam.power / (math.pi * beam.diameter_1e ** 2)


def field_amplitude(intensity: float) -> float:
    """Peak field amplitude in V/m for an intensity in W/cm^2."""
    return math.sqrt(2.0 * intensity * 1e4 / (C_LIGHT * EPS0))


def rabi_from_intensity(intensity: float, dipole: float = RB_D1_DIPOLE) -> float:
    if dipole <= 0:
        raise ValueError("dipole must be > 0")
    return dipole * field_amplitude(intensity) / HBAR / TWO_PI_MHZ


def rabi_from_power(beam: BeamSpec, dipole: float = RB_D1_DIPOLE) -> float:
    """Rabi frequency (MHz) of a beam, ``Omega = mu E / hbar``."""
    return rabi_from_intensity(peak_intensity(beam), dipole)


def intensity_from_rabi(rabi: float, dipole: float = RB_D1_DIPOLE) -> float:
    """Inverse of :func:`rabi_from_intensity`, W/cm^2."""
    if dipole <= 0:
        raise ValueError("dipole must be > 0")
    e = rabi * TWO_PI_MHZ * HBAR / dipole
    return 0.5 * C_LIGHT * EPS0 * e * e * 1e-4


def calibrate_dipole(pairs: Iterable[tuple[BeamSpec, float]]) -> float:
    """Least-squares dipole scale from ``(beam, quoted Rabi MHz)`` pairs.

    The model Rabi frequency is linear in the dipole, ``Omega = mu s``, so the
    minimiser of ``sum (mu s_k - Omega_k)^2`` is ``sum s_k Omega_k / sum s_k^2``.
    """
    pairs = list(pairs)
    if not pairs:
        raise ValueError("calibrate_dipole needs at least one (beam, rabi) pair")
    num = den = 0.0
    for beam, rabi in pairs:
        s = rabi_from_power(beam, 1.0)
        num += s * rabi
        den += s * s
    if den == 0:
        raise ValueError("all beams have zero power")
    return num / den


# quoted power / Rabi pairs for the weak fields (1 mm beams)
REFERENCE_PAIRS = (
    (BeamSpec(8e-6, 0.1), 3.0),
    (BeamSpec(300e-6, 0.1), 18.0),
    (BeamSpec(14e-6, 0.1), 4.0),
)
