"""Steady-state Lindblad solver for one four-level tripod.

Basis ordering is ``(a, b, c, e)``: probe ground, trigger ground, coupling
ground, excited state.  In the frame rotating with the three lasers (all
detunings ``omega_laser - omega_atom``)::

    H = -dp |e><e| - (dp - dt) |b><b| - (dp - dc) |c><c|
        - 1/2 (Op |e><a| + Ot |e><b| + Oc |e><c| + h.c.)

Dissipation:

* spontaneous decay of ``e`` at rate ``Gamma = 2 (gamma0 - laser_linewidth)``
  split between the three ground states by ``branching``;
* pure dephasing such that every optical coherence decays at ``gamma0`` and
  the ground coherences a-b, a-c, b-c decay at ``gamma1``, ``gamma2``,
  ``gamma3``.  The dephasing is realised with diagonal Lindblad operators
  obtained by embedding the rate matrix in Euclidean space, so the generator
  stays completely positive;
* uniform ground-state mixing at ``ground_mixing`` between every pair of
  ground states, which makes the steady state unique.

Vectorisation is column stacking, ``vec(A X B) = (B^T kron A) vec(X)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .model import (
    DecayRates,
    Drives,
    FieldDrive,
    Populations,
    Role,
    TripodParams,
    EPS0,
    HBAR,
    effective_rabi,
    to_angular,
)
from .susceptibility import PopulationGrid

A, B, C, E = 0, 1, 2, 3
DIM = 4
_I4 = np.eye(DIM)
_TRACE_ROWS = np.array([k * DIM + k for k in range(DIM)])


class AmbiguousSteadyStateError(np.linalg.LinAlgError):
    """The Liouvillian kernel is more than one-dimensional."""


@dataclass(frozen=True)
class OracleModel:
    """Mapping from the effective decay rates onto Lindblad terms (MHz).

    ``branching`` is ``"equal"`` (one third to each ground state) or
    ``"dipole"`` (proportional to the squared coefficient of each leg), or an
    explicit triple for ``(a, b, c)``.
    """

    laser_linewidth: float = 0.625
    ground_mixing: float = 0.001
    branching: str | tuple[float, float, float] = "equal"

    def __post_init__(self):
        if self.laser_linewidth < 0 or self.ground_mixing < 0:
            raise ValueError("linewidth and ground mixing must be >= 0")
        if isinstance(self.branching, str):
            if self.branching not in ("equal", "dipole"):
                raise ValueError(f"unknown branching {self.branching!r}")
        else:
            br = tuple(float(x) for x in self.branching)
            if len(br) != 3 or min(br) < 0 or sum(br) <= 0:
                raise ValueError("explicit branching needs three non-negative weights")
            object.__setattr__(self, "branching", br)

    def natural_linewidth(self, decay: DecayRates) -> float:
        gamma = 2.0 * (decay.gamma0 - self.laser_linewidth)
        if gamma <= 0:
            raise ValueError("laser_linewidth must be smaller than gamma0")
        return gamma

    def branching_ratios(self, legs: tuple[float, float, float]) -> np.ndarray:
        if self.branching == "equal":
            w = np.ones(3)
        elif self.branching == "dipole":
            w = np.asarray(legs, dtype=float) ** 2
        else:
            w = np.asarray(self.branching, dtype=float)
        return w / w.sum()


@dataclass(frozen=True)
class DensityMatrix:
    data: np.ndarray

    @property
    def populations(self) -> np.ndarray:
        return np.real(np.diag(self.data))

    def hermiticity_error(self) -> float:
        return float(np.max(np.abs(self.data - self.data.conj().T)))

    def trace_error(self) -> float:
        return float(abs(np.trace(self.data) - 1.0))

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(0.5 * (self.data + self.data.conj().T)).min())

    def coherence(self, upper: int, lower: int) -> complex:
        return complex(self.data[upper, lower])


def _dephasing_operators(rates: np.ndarray) -> list[np.ndarray]:
    """Diagonal Lindblad operators whose coherence damping matches ``rates``.

    ``D[L]`` with ``L = diag(l)`` damps ``rho_ij`` at ``|l_i - l_j|^2 / 2``, so
    we need points ``x_i`` with ``|x_i - x_j|^2 = 2 rates_ij``: classical
    multidimensional scaling.
    """
    sq = 2.0 * rates
    n = sq.shape[0]
    j = np.eye(n) - np.full((n, n), 1.0 / n)
    gram = -0.5 * j @ sq @ j
    w, v = np.linalg.eigh(gram)
    scale = max(np.abs(w).max(), 1e-300)
    if w.min() < -1e-9 * scale:
        raise ValueError(
            "dephasing rates cannot be produced by a Lindblad generator "
            "(rate matrix not conditionally negative definite)"
        )
    return [np.diag(math.sqrt(lam) * v[:, k]) for k, lam in enumerate(w) if lam > 1e-12 * scale]


def _dissipator(op: np.ndarray) -> np.ndarray:
    ldl = op.conj().T @ op
    return np.kron(op.conj(), op) - 0.5 * np.kron(_I4, ldl) - 0.5 * np.kron(ldl.T, _I4)


def _hamiltonian_super(h: np.ndarray) -> np.ndarray:
    return -1j * (np.kron(_I4, h) - np.kron(h.T, _I4))


def dissipative_part(decay: DecayRates, legs: tuple[float, float, float],
                     model: OracleModel = OracleModel()) -> np.ndarray:
    """The detuning- and field-independent part of the Liouvillian (rad/s)."""
    gamma = to_angular(model.natural_linewidth(decay))
    mix = float(to_angular(model.ground_mixing))
    g0, g1, g2, g3 = (float(to_angular(g)) for g in decay.as_tuple())

    sup = np.zeros((DIM * DIM, DIM * DIM), dtype=complex)
    for ground, ratio in zip((A, B, C), model.branching_ratios(legs)):
        if ratio > 0:
            op = np.zeros((DIM, DIM))
            op[ground, E] = math.sqrt(gamma * ratio)
            sup += _dissipator(op)
    if mix > 0:
        for src in (A, B, C):
            for dst in (A, B, C):
                if src != dst:
                    op = np.zeros((DIM, DIM))
                    op[dst, src] = math.sqrt(mix)
                    sup += _dissipator(op)

    # residual pure dephasing after decay and mixing contributions
    rates = np.zeros((DIM, DIM))
    rates[A, B] = g1 - 2.0 * mix
    rates[A, C] = g2 - 2.0 * mix
    rates[B, C] = g3 - 2.0 * mix
    for g in (A, B, C):
        rates[g, E] = g0 - gamma / 2.0 - mix
    rates = rates + rates.T
    if rates.min() < -1e-12 * max(g0, 1.0):
        raise ValueError("decay rates are smaller than the decay and mixing they must include")
    rates = np.clip(rates, 0.0, None)
    for op in _dephasing_operators(rates):
        sup += _dissipator(op)
    return sup


def _hamiltonian(rabi, detunings) -> np.ndarray:
    op, ot, oc = (float(to_angular(r)) for r in rabi)
    dp, dt, dc = (float(to_angular(d)) for d in detunings)
    h = np.zeros((DIM, DIM), dtype=complex)
    h[E, E] = -dp
    h[B, B] = -(dp - dt)
    h[C, C] = -(dp - dc)
    for g, om in ((A, op), (B, ot), (C, oc)):
        h[E, g] = h[g, E] = -om / 2.0
    return h


def build_liouvillian(rabi, detunings, decay: DecayRates,
                      legs: tuple[float, float, float] = (1.0, 1.0, 1.0),
                      model: OracleModel = OracleModel()) -> np.ndarray:
    """16 x 16 generator for one tripod.

    ``rabi`` are the effective Rabi frequencies ``(probe, trigger, coupling)``
    in MHz, ``detunings`` ``(dp, dt, dc)`` in MHz, and ``legs`` the dipole
    coefficients used for ``"dipole"`` branching.
    """
    return _hamiltonian_super(_hamiltonian(rabi, detunings)) + dissipative_part(decay, legs, model)


def _constrained_system(liouv: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    mat = np.array(liouv, dtype=complex, copy=True)
    mat[..., 0, :] = 0.0
    mat[..., 0, _TRACE_ROWS] = 1.0
    rhs = np.zeros(mat.shape[:-1], dtype=complex)
    rhs[..., 0] = 1.0
    return mat, rhs


def _check_kernel(liouv: np.ndarray) -> None:
    s = np.linalg.svd(liouv, compute_uv=False)
    if s.shape[-1] >= 2 and np.any(s[..., -2] <= 1e-10 * s[..., 0]):
        raise AmbiguousSteadyStateError(
            "steady state is not unique; is ground_mixing zero?"
        )


def _finish(vec: np.ndarray) -> np.ndarray:
    rho = np.swapaxes(vec.reshape(vec.shape[:-1] + (DIM, DIM)), -1, -2)
    rho = 0.5 * (rho + np.conj(np.swapaxes(rho, -1, -2)))
    tr = np.real(np.trace(rho, axis1=-2, axis2=-1))
    return rho / tr[..., None, None]


def steady_state(liouv: np.ndarray) -> DensityMatrix:
    """Solve ``L rho = 0`` with ``tr rho = 1`` by a dense direct solve."""
    _check_kernel(liouv)
    mat, rhs = _constrained_system(liouv)
    vec = np.linalg.solve(mat, rhs)
    return DensityMatrix(_finish(vec))


def evolve(liouv: np.ndarray, rho0: np.ndarray, t: float) -> DensityMatrix:
    """Propagate ``rho0`` for time ``t`` (s) with the matrix exponential."""
    vec = rho0.reshape(-1, order="F").astype(complex)
    out = scipy.linalg.expm(liouv * t) @ vec
    return DensityMatrix(out.reshape(DIM, DIM, order="F"))


def relaxation_time(liouv: np.ndarray) -> float:
    """Inverse of the slowest non-zero decay rate of the generator (s)."""
    rates = np.sort(-np.real(np.linalg.eigvals(liouv)))
    return 1.0 / rates[1]


# ---------------------------------------------------------------------------
# tripod subsystems of the medium


def subsystem_rabi(drives: Drives, params: TripodParams, subsystem: int):
    return tuple(
        effective_rabi(d, params.coeffs, subsystem)
        for d in (drives.probe, drives.trigger, drives.coupling)
    )


def subsystem_legs(params: TripodParams, subsystem: int):
    c = params.coeffs
    i = subsystem - 1
    return (c.c_probe[i], c.c_trigger[i], c.c_coupling[i])


def solve_subsystem(params: TripodParams, drives: Drives, subsystem: int,
                    model: OracleModel = OracleModel()) -> DensityMatrix:
    liouv = build_liouvillian(
        subsystem_rabi(drives, params, subsystem),
        drives.detunings,
        params.decay,
        subsystem_legs(params, subsystem),
        model,
    )
    return steady_state(liouv)


def steady_state_grid(params: TripodParams, drives: Drives, subsystem: int,
                      dp, dt, dc, model: OracleModel = OracleModel()) -> np.ndarray:
    """Steady states over a detuning grid, shape ``(n, 4, 4)``."""
    dp, dt, dc = (np.atleast_1d(np.asarray(x, dtype=float)) for x in (dp, dt, dc))
    dp, dt, dc = np.broadcast_arrays(dp, dt, dc)
    rabi = subsystem_rabi(drives, params, subsystem)
    base = build_liouvillian(rabi, (0.0, 0.0, 0.0), params.decay,
                             subsystem_legs(params, subsystem), model)
    # the Hamiltonian is linear in the three detunings
    gens = []
    for k in range(3):
        unit = [0.0, 0.0, 0.0]
        unit[k] = 1.0
        gens.append(_hamiltonian_super(_hamiltonian((0.0, 0.0, 0.0), unit)))
    stack = (base[None]
             + dp[:, None, None] * gens[0][None]
             + dt[:, None, None] * gens[1][None]
             + dc[:, None, None] * gens[2][None])
    _check_kernel(stack)
    mat, rhs = _constrained_system(stack)
    vec = np.linalg.solve(mat, rhs[..., None])[..., 0]
    return _finish(vec)


def chi_from_coherence(rho: DensityMatrix, field: FieldDrive, params: TripodParams,
                       subsystem: int, weight: float = 0.5) -> complex:
    """Susceptibility carried by one tripod from its optical coherence.

    ``chi = 2 w N mu_t rho_eg / (eps0 E)`` with ``E = hbar Omega_eff / mu_t``;
    ``weight`` is the fraction of the atoms in this subsystem.  With the
    coupling sign used here (``-Omega/2``) absorption gives ``Im chi > 0``.
    """
    role = Role(field.role)
    if role is Role.PROBE:
        ground = A
    elif role is Role.TRIGGER:
        ground = B
    else:
        raise ValueError("susceptibility is defined for the probe or the trigger")
    omega = float(to_angular(effective_rabi(field, params.coeffs, subsystem)))
    if omega <= 0:
        raise ValueError(f"{role.value} Rabi frequency must be > 0 to define chi")
    c = params.coeffs.for_role(role)[subsystem - 1]
    mu_t = params.dipole * c
    n_si = params.density * 1e6 * weight
    field_amp = HBAR * omega / mu_t
    return complex(2.0 * n_si * mu_t * rho.coherence(E, ground) / (EPS0 * field_amp))


def oracle_chi_grid(params: TripodParams, drives: Drives, dp, dt, dc,
                    model: OracleModel = OracleModel(), weights=(0.5, 0.5)):
    """Brute-force probe and trigger susceptibilities summed over both tripods.

    Returns ``(chi_p, chi_t, PopulationGrid)``.  Both weak Rabi frequencies must
    be non-zero.
    """
    if drives.probe.rabi <= 0 or drives.trigger.rabi <= 0:
        raise ValueError("oracle susceptibilities need non-zero probe and trigger fields")
    dp, dt, dc = np.broadcast_arrays(*(np.atleast_1d(np.asarray(x, dtype=float)) for x in (dp, dt, dc)))
    n = dp.shape[0]
    chi_p = np.zeros(n, dtype=complex)
    chi_t = np.zeros(n, dtype=complex)
    ra, rb, re = (np.empty((2, n)) for _ in range(3))
    for i in (1, 2):
        rhos = steady_state_grid(params, drives, i, dp, dt, dc, model)
        w = weights[i - 1]
        for role, ground, out in ((Role.PROBE, A, chi_p), (Role.TRIGGER, B, chi_t)):
            drive = drives.get(role)
            c = params.coeffs.for_role(role)[i - 1]
            omega = float(to_angular(effective_rabi(drive, params.coeffs, i)))
            mu_t = params.dipole * c
            out += 2.0 * params.density * 1e6 * w * mu_t ** 2 * rhos[:, E, ground] / (EPS0 * HBAR * omega)
        ra[i - 1] = w * np.real(rhos[:, A, A])
        rb[i - 1] = w * np.real(rhos[:, B, B])
        re[i - 1] = w * np.real(rhos[:, E, E])
    return chi_p, chi_t, PopulationGrid(ra, rb, re)


def oracle_populations(rho1: DensityMatrix, rho2: DensityMatrix,
                       weights=(0.5, 0.5)) -> Populations:
    """Map two tripod steady states onto the medium populations."""
    p1, p2 = rho1.populations, rho2.populations
    w1, w2 = weights
    return Populations(
        rho_a=(w1 * p1[A], w2 * p2[A]),
        rho_b=(w1 * p1[B], w2 * p2[B]),
        rho_e=(w1 * p1[E], w2 * p2[E]),
    )


def population_grid(params: TripodParams, drives: Drives, dp, dt, dc,
                    model: OracleModel = OracleModel(), weights=(0.5, 0.5)) -> PopulationGrid:
    """Oracle populations at every grid point, ready for ``chi_grid``."""
    dp, dt, dc = np.broadcast_arrays(*(np.atleast_1d(np.asarray(x, dtype=float)) for x in (dp, dt, dc)))
    n = dp.shape[0]
    ra, rb, re = (np.empty((2, n)) for _ in range(3))
    for i in (1, 2):
        rhos = steady_state_grid(params, drives, i, dp, dt, dc, model)
        w = weights[i - 1]
        ra[i - 1] = w * np.real(rhos[:, A, A])
        rb[i - 1] = w * np.real(rhos[:, B, B])
        re[i - 1] = w * np.real(rhos[:, E, E])
    return PopulationGrid(ra, rb, re)
