"""Measurable quantities derived from a complex susceptibility.

Dilute-medium relations are used throughout: ``alpha = k Im chi`` and
``n = 1 + Re chi / 2``, with ``k = 2 pi / lambda`` the vacuum wavenumber.
Wavelengths are in nm and lengths in cm.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .model import C_LIGHT

DILUTE_LIMIT = 0.1
GROUP_INDEX_STEP = 0.01  # MHz


def wavenumber(wavelength_nm: float) -> float:
    """Vacuum wavenumber in 1/cm."""
    return 2.0 * math.pi / (wavelength_nm * 1e-7)


def absorption_depth(chi, wavelength: float, cell_length: float):
    """Optical depth ``alpha l = k Im(chi) l``."""
    chi = np.asarray(chi)
    if np.any(np.abs(chi) > DILUTE_LIMIT):
        warnings.warn("|chi| > 0.1: dilute-medium approximation is poor", RuntimeWarning, stacklevel=2)
    out = wavenumber(wavelength) * np.imag(chi) * cell_length
    return out if out.ndim else float(out)


def refractive_index(chi):
    """Return ``n - 1 = Re(chi) / 2``."""
    out = np.real(np.asarray(chi)) / 2.0
    return out if out.ndim else float(out)


def transmission(alpha_l):
    out = np.exp(-np.asarray(alpha_l, dtype=float))
    return out if out.ndim else float(out)


def homodyne_dispersion_signal(chi, wavelength: float, cell_length: float,
                               reference_amplitude: float = 1.0, field_amplitude: float = 1.0):
    """Quadrature homodyne signal ``2 E_R E exp(-alpha l / 2) k (n - 1) l``."""
    if reference_amplitude < 0 or field_amplitude < 0:
        raise ValueError("amplitudes must be >= 0")
    alpha_l = absorption_depth(chi, wavelength, cell_length)
    phase = wavenumber(wavelength) * refractive_index(chi) * cell_length
    out = 2.0 * reference_amplitude * field_amplitude * np.exp(-np.asarray(alpha_l) / 2.0) * phase
    return out if np.ndim(out) else float(out)


def group_index(re_chi, spacing_mhz: float, wavelength: float, index: int | None = None):
    """Group index from uniformly sampled ``Re chi`` using a central difference.

    Parameters
    ----------
    re_chi : array_like
        Real part of the susceptibility at equally spaced detunings.
    spacing_mhz : float
        Detuning step between samples (MHz, linear frequency).
    wavelength : float
        Carrier wavelength in nm.
    index : int, optional
        Sample at which to evaluate; defaults to the middle sample.  Must have
        a neighbour on each side.
    """
    re_chi = np.asarray(re_chi, dtype=float)
    if re_chi.ndim != 1 or re_chi.size < 3:
        raise ValueError("group_index needs at least 3 samples")
    if spacing_mhz <= 0:
        raise ValueError("spacing must be > 0")
    j = re_chi.size // 2 if index is None else int(index)
    if not 0 < j < re_chi.size - 1:
        raise ValueError("evaluation point needs a sample on each side")
    return float(group_index_central(re_chi[j - 1], re_chi[j], re_chi[j + 1], spacing_mhz, wavelength))


def group_index_central(re_minus, re_center, re_plus, spacing_mhz: float, wavelength: float):
    """Vectorised central-difference group index from three ``Re chi`` samples."""
    omega = 2.0 * math.pi * C_LIGHT / (wavelength * 1e-9)
    d_omega = 2.0 * math.pi * spacing_mhz * 1e6
    slope = (np.asarray(re_plus) - np.asarray(re_minus)) / (2.0 * d_omega)
    return 1.0 + np.asarray(re_center) / 2.0 + 0.5 * omega * slope


@dataclass(frozen=True)
class ObservablePoint:
    alpha_l: float
    n_minus_1: float
    transmission: float
    dispersion_signal: float
    group_index: float = float("nan")

    @classmethod
    def from_chi(cls, chi: complex, wavelength: float, cell_length: float,
                 group_index: float = float("nan")) -> "ObservablePoint":
        alpha_l = absorption_depth(chi, wavelength, cell_length)
        return cls(
            alpha_l=alpha_l,
            n_minus_1=refractive_index(chi),
            transmission=transmission(alpha_l),
            dispersion_signal=homodyne_dispersion_signal(chi, wavelength, cell_length),
            group_index=group_index,
        )
