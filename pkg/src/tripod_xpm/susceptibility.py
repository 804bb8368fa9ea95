"""Perturbative probe and trigger susceptibilities of the double tripod.

Each tripod subsystem ``i`` contributes

    chi_P,i = -N|mu C_P,i|^2/(hbar eps0) * { (rho_a - rho_e) / D1
              - (|Omega_T,i|^2 (rho_b - rho_e)/4) / (-Dpt X Y) }

and the trigger expression follows by exchanging the weak-field roles with
conjugated two-photon detunings.  The closed form is evaluated by the kernel
selected in :mod:`tripod_xpm.kernels`.

Sign convention
---------------
Evaluated literally, the expression above has negative imaginary part for an
absorbing medium.  Detunings here are ``omega_laser - omega_atom``, and the
steady-state density-matrix solution in :mod:`tripod_xpm.oracle` shows that
the literal expression equals ``-chi`` with ``chi`` the usual susceptibility
(``Im chi > 0`` absorbs).  The public functions therefore return
``chi = -literal`` by default; pass ``convention="literal"`` to get the
unmodified value.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np

from . import kernels
from .model import (
    DecayRates,
    Drives,
    FieldDrive,
    Populations,
    Role,
    TransitionCoefficients,
    TripodParams,
    effective_rabi,
    tilde_detunings,
    to_angular,
)

WEAK_FIELD_RATIO = 0.05
SINGULAR_FRACTION = 1e-3

CONVENTIONS = ("absorptive", "literal")


class SingularPointError(ArithmeticError):
    """A composite denominator vanished (only possible with zero damping)."""

    def __init__(self, message, index=None, at=None):
        super().__init__(message)
        self.index = index
        self.at = at


class PopulationGrid(NamedTuple):
    """Per-point populations, each array shaped ``(2, n)``."""

    rho_a: np.ndarray
    rho_b: np.ndarray
    rho_e: np.ndarray

    @classmethod
    def from_populations(cls, pops: Populations, n: int) -> "PopulationGrid":
        def tile(vals):
            return np.repeat(np.asarray(vals, dtype=float)[:, None], n, axis=1)

        return cls(tile(pops.rho_a), tile(pops.rho_b), tile(pops.rho_e))

    def point(self, j: int) -> Populations:
        return Populations(
            rho_a=tuple(self.rho_a[:, j]),
            rho_b=tuple(self.rho_b[:, j]),
            rho_e=tuple(self.rho_e[:, j]),
        )


@dataclass(frozen=True)
class SusceptibilityRecord:
    chi_p_sub: tuple[complex, complex]
    chi_t_sub: tuple[complex, complex]
    chi_p: complex
    chi_t: complex
    at: tuple[float, float, float]  # (dp, dt, dc) in MHz
    weak_field_valid: bool = True


@dataclass(frozen=True)
class ChiGrid:
    """Susceptibilities over a detuning grid; ``*_sub`` arrays are ``(2, n)``."""

    dp: np.ndarray
    dt: np.ndarray
    dc: np.ndarray
    chi_p_sub: np.ndarray
    chi_t_sub: np.ndarray
    weak_field_valid: bool

    @property
    def chi_p(self) -> np.ndarray:
        return self.chi_p_sub[0] + self.chi_p_sub[1]

    @property
    def chi_t(self) -> np.ndarray:
        return self.chi_t_sub[0] + self.chi_t_sub[1]

    def __len__(self):
        return self.dp.shape[0]

    def record(self, j: int) -> SusceptibilityRecord:
        p = (complex(self.chi_p_sub[0, j]), complex(self.chi_p_sub[1, j]))
        t = (complex(self.chi_t_sub[0, j]), complex(self.chi_t_sub[1, j]))
        return SusceptibilityRecord(
            chi_p_sub=p,
            chi_t_sub=t,
            chi_p=p[0] + p[1],
            chi_t=t[0] + t[1],
            at=(float(self.dp[j]), float(self.dt[j]), float(self.dc[j])),
            weak_field_valid=self.weak_field_valid,
        )


def weak_field_valid(params: TripodParams, drives: Drives) -> bool:
    """True when |Omega_P,T|^2 <= 0.05 |Omega_C|^2 on every leg."""
    for i in (1, 2):
        oc2 = effective_rabi(drives.coupling, params.coeffs, i) ** 2
        for drive in (drives.probe, drives.trigger):
            if effective_rabi(drive, params.coeffs, i) ** 2 > WEAK_FIELD_RATIO * oc2:
                return False
    return True


def chi_grid(
    params: TripodParams,
    drives: Drives,
    dp,
    dt,
    dc,
    populations: Populations | PopulationGrid | None = None,
    convention: str = "absorptive",
) -> ChiGrid:
    """Evaluate both susceptibilities of both subsystems on a detuning grid.

    ``dp``, ``dt``, ``dc`` are MHz arrays of equal length (scalars broadcast).
    Rabi frequencies come from ``drives``; their detuning fields are ignored.
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"convention must be one of {CONVENTIONS}")
    dp, dt, dc = np.broadcast_arrays(
        np.atleast_1d(np.asarray(dp, dtype=float)),
        np.atleast_1d(np.asarray(dt, dtype=float)),
        np.atleast_1d(np.asarray(dc, dtype=float)),
    )
    dp, dt, dc = (np.ascontiguousarray(a) for a in (dp, dt, dc))
    n = dp.shape[0]
    if populations is None:
        populations = params.populations
    if isinstance(populations, Populations):
        populations = PopulationGrid.from_populations(populations, n)

    gammas = tuple(float(to_angular(g)) for g in params.decay.as_tuple())
    tol = SINGULAR_FRACTION * gammas[0]
    wdp, wdt, wdc = to_angular(dp), to_angular(dt), to_angular(dc)
    sign = -1.0 if convention == "literal" else 1.0

    chi_p = np.empty((2, n), dtype=complex)
    chi_t = np.empty((2, n), dtype=complex)
    for i in (1, 2):
        op = float(to_angular(effective_rabi(drives.probe, params.coeffs, i)))
        ot = float(to_angular(effective_rabi(drives.trigger, params.coeffs, i)))
        oc = float(to_angular(effective_rabi(drives.coupling, params.coeffs, i)))
        bp, bt, bad = kernels.closed_form_subsystem(
            wdp, wdt, wdc, gammas, op, ot, oc,
            populations.rho_a[i - 1], populations.rho_b[i - 1], populations.rho_e[i - 1],
            tol,
        )
        if bad >= 0:
            at = (float(dp[bad]), float(dt[bad]), float(dc[bad]))
            raise SingularPointError(
                f"degenerate denominator in subsystem {i} at "
                f"(dp, dt, dc) = {at} MHz",
                index=bad,
                at=at,
            )
        # literal value is -prefactor * brace
        kp = params.prefactor(params.coeffs.c_probe[i - 1])
        kt = params.prefactor(params.coeffs.c_trigger[i - 1])
        chi_p[i - 1] = sign * kp * bp
        chi_t[i - 1] = sign * kt * bt
    return ChiGrid(dp, dt, dc, chi_p, chi_t, weak_field_valid(params, drives))


def _point(params, drives, populations, convention) -> ChiGrid:
    dp, dt, dc = drives.detunings
    return chi_grid(params, drives, dp, dt, dc, populations, convention)


def chi_probe_sub(subsystem: int, params: TripodParams, drives: Drives,
                  populations=None, convention: str = "absorptive") -> complex:
    """Probe susceptibility of one tripod at the drives' detunings."""
    if subsystem not in (1, 2):
        raise ValueError(f"subsystem must be 1 or 2, got {subsystem!r}")
    return complex(_point(params, drives, populations, convention).chi_p_sub[subsystem - 1, 0])


def chi_trigger_sub(subsystem: int, params: TripodParams, drives: Drives,
                    populations=None, convention: str = "absorptive") -> complex:
    """Trigger susceptibility of one tripod at the drives' detunings."""
    if subsystem not in (1, 2):
        raise ValueError(f"subsystem must be 1 or 2, got {subsystem!r}")
    return complex(_point(params, drives, populations, convention).chi_t_sub[subsystem - 1, 0])


def chi_total(params: TripodParams, drives: Drives, populations=None,
              convention: str = "absorptive") -> SusceptibilityRecord:
    return _point(params, drives, populations, convention).record(0)


def chi_lambda(field: Role, params: TripodParams, drives: Drives,
               populations=None, convention: str = "absorptive") -> complex:
    """Three-level baseline: the other weak field switched off."""
    field = Role(field)
    if field is Role.PROBE:
        rec = chi_total(params, drives.with_rabi(Role.TRIGGER, 0.0), populations, convention)
        return rec.chi_p
    if field is Role.TRIGGER:
        rec = chi_total(params, drives.with_rabi(Role.PROBE, 0.0), populations, convention)
        return rec.chi_t
    raise ValueError("chi_lambda is defined for the probe or the trigger")


def cross_coefficient(target: Role, params: TripodParams, drives: Drives,
                      populations=None) -> complex:
    """Analytic d chi_target / d|Omega_other|^2 at zero perturbing field.

    Sums the cross term and the light-shift term of the first denominator,
    per unit squared bare Rabi frequency (MHz^-2).  Absorptive convention.
    """
    target = Role(target)
    pops = params.populations if populations is None else populations
    dp, dt, dc = drives.detunings
    td = tilde_detunings(dp, dt, dc, params.decay)
    total = 0j
    for i in (1, 2):
        oc = to_angular(effective_rabi(drives.coupling, params.coeffs, i))
        ac = oc * oc / 4.0
        if target is Role.PROBE:
            c_other = params.coeffs.c_trigger[i - 1]
            k = params.prefactor(params.coeffs.c_probe[i - 1])
            own = pops.rho_a[i - 1] - pops.rho_e[i - 1]
            other = pops.rho_b[i - 1] - pops.rho_e[i - 1]
            d0 = -td.d_p + ac / td.d_pc
            x = -np.conj(td.d_t) + ac / np.conj(td.d_tc)
            # d/da of own/(d0 + a/dpt) and of -(a other)/(-dpt x d0)
            brace = -own / (td.d_pt * d0 * d0) + other / (td.d_pt * x * d0)
        elif target is Role.TRIGGER:
            c_other = params.coeffs.c_probe[i - 1]
            k = params.prefactor(params.coeffs.c_trigger[i - 1])
            own = pops.rho_b[i - 1] - pops.rho_e[i - 1]
            other = pops.rho_a[i - 1] - pops.rho_e[i - 1]
            d0 = -td.d_t + ac / td.d_tc
            x = -np.conj(td.d_p) + ac / np.conj(td.d_pc)
            brace = own / (np.conj(td.d_pt) * d0 * d0) - other / (np.conj(td.d_pt) * x * d0)
        else:
            raise ValueError("target must be probe or trigger")
        # |Omega_i|^2 / 4 = (2 pi 1e6)^2 c^2 |Omega|^2 / 4
        scale = float(to_angular(1.0)) ** 2 * c_other ** 2 / 4.0
        total += k * brace * scale
    return complex(total)


def exchange_roles(params: TripodParams, drives: Drives):
    """Swap the probe and trigger roles (detunings, Rabi frequencies,
    coefficients, populations and the two ground-coherence dampings)."""
    c = params.coeffs
    d = params.decay
    p = params.populations
    new_params = replace(
        params,
        coeffs=TransitionCoefficients(c_probe=c.c_trigger, c_coupling=c.c_coupling, c_trigger=c.c_probe),
        decay=DecayRates(d.gamma0, d.gamma1, d.gamma3, d.gamma2),
        populations=Populations(rho_a=p.rho_b, rho_b=p.rho_a, rho_e=p.rho_e),
    )
    new_drives = Drives(
        FieldDrive(Role.PROBE, drives.trigger.rabi, drives.trigger.detuning),
        drives.coupling,
        FieldDrive(Role.TRIGGER, drives.probe.rabi, drives.probe.detuning),
    )
    return new_params, new_drives


__all__ = [
    "SingularPointError",
    "PopulationGrid",
    "SusceptibilityRecord",
    "ChiGrid",
    "chi_grid",
    "chi_probe_sub",
    "chi_trigger_sub",
    "chi_total",
    "chi_lambda",
    "cross_coefficient",
    "exchange_roles",
    "weak_field_valid",
]
