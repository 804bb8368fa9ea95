"""Physical parameters, unit conventions and complex detuning algebra.

All user-facing frequencies (Rabi frequencies, decay rates, detunings) are
linear frequencies in MHz, i.e. ``Omega / 2pi``.  Internal evaluation works in
angular units (rad/s); :func:`to_angular` is the only place that conversion is
defined.  Lengths are in cm, densities per cm^3.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import NamedTuple

import numpy as np

TWO_PI_MHZ = 2.0 * math.pi * 1.0e6

# CODATA values, SI
HBAR = 1.054571817e-34
EPS0 = 8.8541878128e-12
C_LIGHT = 299792458.0

RB_D1_DIPOLE = 2.54e-29  # C m
RB_D1_WAVELENGTH_NM = 795.0


def to_angular(value_mhz):
    """Convert a linear frequency in MHz to angular frequency in rad/s."""
    return np.multiply(value_mhz, TWO_PI_MHZ)


class Role(str, enum.Enum):
    PROBE = "probe"
    COUPLING = "coupling"
    TRIGGER = "trigger"


def _pair(values, name: str) -> tuple[float, float]:
    out = tuple(float(v) for v in values)
    if len(out) != 2:
        raise ValueError(f"{name} needs one value per subsystem, got {len(out)}")
    return out


@dataclass(frozen=True)
class DecayRates:
    """Decay rates in MHz (linear frequency).

    gamma0 damps the optical coherences; gamma1, gamma2 and gamma3 damp the
    probe-trigger, probe-coupling and trigger-coupling ground coherences.
    """

    gamma0: float = 3.5
    gamma1: float = 0.5
    gamma2: float = 1.5
    gamma3: float = 1.0

    def __post_init__(self):
        for name in ("gamma0", "gamma1", "gamma2", "gamma3"):
            v = getattr(self, name)
            if not math.isfinite(v) or v < 0:
                raise ValueError(f"{name} must be finite and >= 0, got {v}")
        if self.gamma0 <= 0:
            raise ValueError("gamma0 must be > 0")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.gamma0, self.gamma1, self.gamma2, self.gamma3)


@dataclass(frozen=True)
class TransitionCoefficients:
    """Dipole coefficients C relative to the reduced dipole, per subsystem.

    ``c_probe[i]`` belongs to the probe leg of subsystem ``i + 1``, and so on.
    """

    c_probe: tuple[float, float] = (1.0 / math.sqrt(12.0), 1.0 / math.sqrt(12.0))
    c_coupling: tuple[float, float] = (1.0, 1.0)
    c_trigger: tuple[float, float] = (1.0 / math.sqrt(2.0), 0.5)

    def __post_init__(self):
        for name in ("c_probe", "c_coupling", "c_trigger"):
            vals = _pair(getattr(self, name), name)
            for v in vals:
                if not (math.isfinite(v) and 0.0 < v <= 1.0):
                    raise ValueError(f"{name} entries must lie in (0, 1], got {v}")
            object.__setattr__(self, name, vals)

    def for_role(self, role: Role) -> tuple[float, float]:
        role = Role(role)
        return {
            Role.PROBE: self.c_probe,
            Role.COUPLING: self.c_coupling,
            Role.TRIGGER: self.c_trigger,
        }[role]


@dataclass(frozen=True)
class FieldDrive:
    role: Role
    rabi: float
    detuning: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "role", Role(self.role))
        if not math.isfinite(self.rabi) or self.rabi < 0:
            raise ValueError(f"{self.role.value} Rabi frequency must be >= 0, got {self.rabi}")
        if not math.isfinite(self.detuning):
            raise ValueError(f"{self.role.value} detuning must be finite")


class Drives(NamedTuple):
    """The three fields acting on the tripod."""

    probe: FieldDrive
    coupling: FieldDrive
    trigger: FieldDrive

    @classmethod
    def make(cls, probe=(0.0, 0.0), coupling=(70.0, 0.0), trigger=(0.0, 0.0)) -> "Drives":
        """Build from ``(rabi, detuning)`` pairs in MHz."""
        return cls(
            FieldDrive(Role.PROBE, *probe),
            FieldDrive(Role.COUPLING, *coupling),
            FieldDrive(Role.TRIGGER, *trigger),
        )

    def get(self, role: Role) -> FieldDrive:
        return getattr(self, Role(role).value)

    def with_rabi(self, role: Role, rabi: float) -> "Drives":
        role = Role(role)
        return self._replace(**{role.value: replace(self.get(role), rabi=rabi)})

    def with_detunings(self, dp=None, dt=None, dc=None) -> "Drives":
        out = self
        for role, value in ((Role.PROBE, dp), (Role.TRIGGER, dt), (Role.COUPLING, dc)):
            if value is not None:
                out = out._replace(**{role.value: replace(out.get(role), detuning=float(value))})
        return out

    @property
    def detunings(self) -> tuple[float, float, float]:
        return (self.probe.detuning, self.trigger.detuning, self.coupling.detuning)


@dataclass(frozen=True)
class Populations:
    """Ground and excited populations entering the susceptibilities.

    ``rho_a[i]`` is the probe-ground population of subsystem ``i + 1`` (the
    states a2, a3), ``rho_b[i]`` the trigger-ground population (b1, b2) and
    ``rho_e[i]`` the excited-state population (e1, e2).  Values are fractions
    of the total atom number, so the four ground entries sum to about one
    when the coupling ground states are pumped empty.
    """

    rho_a: tuple[float, float] = (0.38, 0.30)
    rho_b: tuple[float, float] = (0.12, 0.20)
    rho_e: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        total = 0.0
        for name in ("rho_a", "rho_b", "rho_e"):
            vals = _pair(getattr(self, name), name)
            for v in vals:
                if not (math.isfinite(v) and 0.0 <= v <= 1.0):
                    raise ValueError(f"{name} entries must lie in [0, 1], got {v}")
            total += sum(vals)
            object.__setattr__(self, name, vals)
        if total > 1.0 + 1e-9:
            raise ValueError(f"populations sum to {total:.6g} > 1")


@dataclass(frozen=True)
class TripodParams:
    """Atomic medium: density (cm^-3), reduced dipole (C m), wavelength (nm),
    cell length (cm) plus coefficients, decay rates and populations."""

    density: float = 3.72e11
    dipole: float = RB_D1_DIPOLE
    coeffs: TransitionCoefficients = field(default_factory=TransitionCoefficients)
    decay: DecayRates = field(default_factory=DecayRates)
    populations: Populations = field(default_factory=Populations)
    wavelength: float = RB_D1_WAVELENGTH_NM
    cell_length: float = 5.0

    def __post_init__(self):
        for name in ("density", "dipole", "wavelength", "cell_length"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be > 0, got {v}")

    @property
    def wavenumber(self) -> float:
        """Vacuum wavenumber 2 pi / lambda in 1/cm."""
        return 2.0 * math.pi / (self.wavelength * 1e-7)

    def prefactor(self, c: float) -> float:
        """N |mu C|^2 / (hbar eps0) in rad/s for a transition coefficient ``c``."""
        n_si = self.density * 1e6
        return n_si * (self.dipole * c) ** 2 / (HBAR * EPS0)


def reference_params(**overrides) -> TripodParams:
    """Parameters used for the reference fit (coupling 70 MHz, caption decay rates)."""
    return replace(TripodParams(), **overrides)


@dataclass(frozen=True)
class TildeDetunings:
    """Complex detunings in rad/s: real part detuning, imaginary part damping."""

    d_p: complex
    d_t: complex
    d_pt: complex
    d_pc: complex
    d_tc: complex


def tilde_detunings(dp, dt, dc, decay: DecayRates) -> TildeDetunings:
    """Complex one- and two-photon detunings from MHz inputs.

    Accepts scalars or equally shaped arrays; results are in rad/s.
    """
    g0, g1, g2, g3 = (to_angular(g) for g in decay.as_tuple())
    dp, dt, dc = to_angular(dp), to_angular(dt), to_angular(dc)
    return TildeDetunings(
        d_p=dp + 1j * g0,
        d_t=dt + 1j * g0,
        d_pt=(dp - dt) + 1j * g1,
        d_pc=(dp - dc) + 1j * g2,
        d_tc=(dt - dc) + 1j * g3,
    )


def effective_rabi(drive: FieldDrive, coeffs: TransitionCoefficients, subsystem: int) -> float:
    """Rabi frequency of ``drive`` on its leg of tripod ``subsystem`` (1 or 2), in MHz."""
    if subsystem not in (1, 2):
        raise ValueError(f"subsystem must be 1 or 2, got {subsystem!r}")
    return drive.rabi * coeffs.for_role(drive.role)[subsystem - 1]
