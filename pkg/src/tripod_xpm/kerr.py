"""Cross-Kerr coefficients and the phase shifts built from them.

``n2`` is the on/off difference of ``n - 1`` for the target field, switching
the other weak field between its configured Rabi frequency and zero, divided
by the perturbing intensity (cm^2/W).  Phases are in radians.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .calibration import intensity_from_rabi
from .model import DecayRates, Drives, Populations, Role, TripodParams
from .observables import absorption_depth, refractive_index, transmission, wavenumber
from .susceptibility import chi_total


def _other(target: Role) -> Role:
    target = Role(target)
    if target is Role.PROBE:
        return Role.TRIGGER
    if target is Role.TRIGGER:
        return Role.PROBE
    raise ValueError("target must be probe or trigger")


def _chi(record, target: Role) -> complex:
    return record.chi_p if Role(target) is Role.PROBE else record.chi_t


def resolve_populations(params: TripodParams, drives: Drives, source="configured",
                        oracle_model=None) -> Populations:
    """Populations for one evaluation point.

    ``source`` is ``"configured"`` (``params.populations``), ``"oracle"``
    (steady state of the Lindblad model for these drives) or an explicit
    :class:`Populations`.
    """
    if isinstance(source, Populations):
        return source
    if source == "configured":
        return params.populations
    if source == "oracle":
        from . import oracle

        model = oracle.OracleModel() if oracle_model is None else oracle_model
        rhos = [oracle.solve_subsystem(params, drives, i, model) for i in (1, 2)]
        return oracle.oracle_populations(*rhos)
    raise ValueError(f"unknown population source {source!r}")


@dataclass(frozen=True)
class XpmResult:
    target: Role
    n2: float
    phase_shift: float
    transmission_at_point: float
    operating_point: tuple[float, float, float]
    intensity: float


def index_change(target: Role, params: TripodParams, drives: Drives,
                 population_source="configured", oracle_model=None) -> tuple[float, complex]:
    """``(delta (n - 1), chi_on)`` for the target when the other weak field is switched on."""
    other = _other(target)
    off = drives.with_rabi(other, 0.0)
    pops_on = resolve_populations(params, drives, population_source, oracle_model)
    pops_off = resolve_populations(params, off, population_source, oracle_model)
    chi_on = _chi(chi_total(params, drives, pops_on), target)
    chi_off = _chi(chi_total(params, off, pops_off), target)
    return refractive_index(chi_on) - refractive_index(chi_off), chi_on


def xpm_coefficient(target: Role, params: TripodParams, drives: Drives,
                    perturbing_intensity: float, population_source="configured",
                    oracle_model=None) -> float:
    """Cross-Kerr coefficient ``n2`` of ``target`` in cm^2/W.

    ``perturbing_intensity`` (W/cm^2) is the intensity of the other weak
    field, whose Rabi frequency is taken from ``drives``.
    """
    if not perturbing_intensity > 0:
        raise ValueError("perturbing intensity must be > 0")
    dn, _ = index_change(target, params, drives, population_source, oracle_model)
    return dn / perturbing_intensity


def xpm_result(target: Role, params: TripodParams, drives: Drives,
               perturbing_intensity: float | None = None, population_source="configured",
               oracle_model=None) -> XpmResult:
    """n2, phase and target transmission at the drives' operating point.

    Without an explicit intensity, the perturber's intensity follows from its
    Rabi frequency and ``params.dipole``.
    """
    target = Role(target)
    other = _other(target)
    if perturbing_intensity is None:
        perturbing_intensity = intensity_from_rabi(drives.get(other).rabi, params.dipole)
    if not perturbing_intensity > 0:
        raise ValueError("perturbing intensity must be > 0")
    dn, chi_on = index_change(target, params, drives, population_source, oracle_model)
    n2 = dn / perturbing_intensity
    return XpmResult(
        target=target,
        n2=n2,
        phase_shift=xpm_phase_shift(n2, perturbing_intensity, params.wavelength, params.cell_length),
        transmission_at_point=transmission(absorption_depth(chi_on, params.wavelength, params.cell_length)),
        operating_point=drives.detunings,
        intensity=perturbing_intensity,
    )


def xpm_phase_shift(n2: float, intensity: float, wavelength: float, cell_length: float) -> float:
    """``Phi = k n2 I l``."""
    return wavenumber(wavelength) * n2 * intensity * cell_length


def phase_from_dispersion_difference(target: Role, params: TripodParams, drives: Drives,
                                     population_source="configured", oracle_model=None) -> float:
    """``k l [ (n - 1)_on - (n - 1)_off ]`` for the target field."""
    dn, _ = index_change(target, params, drives, population_source, oracle_model)
    return wavenumber(params.wavelength) * params.cell_length * dn


@dataclass(frozen=True)
class ConditionalPhase:
    probe_phase: float
    trigger_phase: float

    @property
    def total(self) -> float:
        return self.probe_phase + self.trigger_phase


def conditional_phase_terms(params: TripodParams, drives_p: Drives, drives_t: Drives,
                            population_source="configured", oracle_model=None) -> ConditionalPhase:
    """Probe phase induced by the trigger in ``drives_p`` and trigger phase
    induced by the probe in ``drives_t``."""
    return ConditionalPhase(
        probe_phase=phase_from_dispersion_difference(Role.PROBE, params, drives_p,
                                                     population_source, oracle_model),
        trigger_phase=phase_from_dispersion_difference(Role.TRIGGER, params, drives_t,
                                                       population_source, oracle_model),
    )


def conditional_phase(params: TripodParams, drives_p: Drives, drives_t: Drives,
                      population_source="configured", oracle_model=None) -> float:
    """Sum of the two cross phases, rad."""
    return conditional_phase_terms(params, drives_p, drives_t, population_source, oracle_model).total


def reduced_linewidth_params(params: TripodParams, linewidth: float = 0.005,
                             current_linewidth: float = 1.0,
                             gamma0_laser_part: float = 0.625) -> TripodParams:
    """Project the decay rates onto narrower lasers (all MHz).

    Ground-coherence rates scale by ``linewidth / current_linewidth``.  In
    ``gamma0`` only the laser part is replaced, so the natural decay is kept.
    """
    if not 0 < linewidth <= current_linewidth:
        raise ValueError("linewidth must lie in (0, current_linewidth]")
    d = params.decay
    if not 0 <= gamma0_laser_part < d.gamma0:
        raise ValueError("gamma0_laser_part must lie in [0, gamma0)")
    s = linewidth / current_linewidth
    decay = DecayRates(
        gamma0=d.gamma0 - gamma0_laser_part + linewidth,
        gamma1=d.gamma1 * s,
        gamma2=d.gamma2 * s,
        gamma3=d.gamma3 * s,
    )
    return replace(params, decay=decay)


def degrees(rad: float) -> float:
    return float(np.degrees(rad))


__all__ = [
    "ConditionalPhase",
    "XpmResult",
    "conditional_phase",
    "conditional_phase_terms",
    "degrees",
    "index_change",
    "phase_from_dispersion_difference",
    "reduced_linewidth_params",
    "resolve_populations",
    "xpm_coefficient",
    "xpm_phase_shift",
    "xpm_result",
]

