"""Detuning sweeps, figure-style scans, feature extraction and model fitting.

A sweep walks one detuning axis; the other two detunings are either held at
the scenario's values or locked to another detuning plus an offset.  Grid
points are independent, so chunks of the grid are evaluated concurrently and
reassembled by index.  Every derived column is computed from the assembled
arrays, which makes the output independent of the worker count.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable, Mapping, Sequence

import numpy as np
import scipy.optimize

from .calibration import intensity_from_rabi
from .model import Drives, Populations, Role, TripodParams
from .observables import (
    GROUP_INDEX_STEP,
    ObservablePoint,
    absorption_depth,
    group_index_central,
    homodyne_dispersion_signal,
    refractive_index,
    transmission,
    wavenumber,
)
from .oracle import OracleModel, population_grid
from .susceptibility import ChiGrid, PopulationGrid, SingularPointError, chi_grid

AXES = ("delta_p", "delta_t", "delta_c")
POPULATION_SOURCES = ("configured", "oracle")
MIN_CHUNK = 64
MAX_RESTARTS = 8

FIG4_COLUMNS = (
    "delta_c_mhz",
    "n2_p_cm2_per_w",
    "n2_t_cm2_per_w",
    "transmission_p",
    "transmission_t",
)


class NoFeatureError(ValueError):
    """A requested spectral feature is absent from the table."""


# ---------------------------------------------------------------------------
# scan specification


@dataclass(frozen=True)
class Lock:
    """Hold a detuning at ``follow + offset`` (MHz)."""

    follow: str
    offset: float = 0.0


@dataclass(frozen=True)
class ScanSpec:
    axis: str
    start: float
    stop: float
    points: int
    locks: Mapping[str, Lock] = field(default_factory=dict)

    def __post_init__(self):
        if self.axis not in AXES:
            raise ValueError(f"axis must be one of {AXES}, got {self.axis!r}")
        if not (math.isfinite(self.start) and math.isfinite(self.stop) and self.start < self.stop):
            raise ValueError("scan needs finite start < stop")
        if int(self.points) != self.points or self.points < 3:
            raise ValueError("points must be an integer >= 3")
        locks = {}
        for target, lock in dict(self.locks).items():
            if not isinstance(lock, Lock):
                lock = Lock(*lock) if isinstance(lock, (tuple, list)) else Lock(**lock)
            if target not in AXES or lock.follow not in AXES:
                raise ValueError(f"lock {target!r} -> {lock.follow!r} names an unknown detuning")
            if target == self.axis:
                raise ValueError(f"the scan axis {target!r} cannot also be locked")
            if target == lock.follow:
                raise ValueError(f"{target!r} cannot be locked to itself")
            locks[target] = lock
        object.__setattr__(self, "locks", locks)
        object.__setattr__(self, "points", int(self.points))
        self._resolution_order()

    def _resolution_order(self) -> list[str]:
        known = {self.axis} | {a for a in AXES if a not in self.locks}
        order = []
        pending = dict(self.locks)
        while pending:
            ready = [t for t, lk in pending.items() if lk.follow in known]
            if not ready:
                raise ValueError(f"locks form a cycle: {sorted(pending)}")
            for t in sorted(ready):
                order.append(t)
                known.add(t)
                del pending[t]
        return order

    def axis_values(self) -> np.ndarray:
        # written so that refining 1 step into 2 reproduces the old points exactly
        i = np.arange(self.points, dtype=float)
        return self.start + (self.stop - self.start) * i / (self.points - 1)

    def detunings(self, base: tuple[float, float, float], values) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        values = np.asarray(values, dtype=float)
        out = {a: np.full(values.shape, float(b)) for a, b in zip(AXES, base)}
        out[self.axis] = values.copy()
        for target in self._resolution_order():
            lock = self.locks[target]
            out[target] = out[lock.follow] + lock.offset
        return out["delta_p"], out["delta_t"], out["delta_c"]


# ---------------------------------------------------------------------------
# scenario and result table


@dataclass(frozen=True)
class Scenario:
    params: TripodParams = field(default_factory=TripodParams)
    drives: Drives = field(default_factory=Drives.make)
    population_source: str = "configured"
    oracle_model: OracleModel = field(default_factory=OracleModel)
    probe_on: bool = True
    trigger_on: bool = True

    def __post_init__(self):
        if self.population_source not in POPULATION_SOURCES:
            raise ValueError(f"population_source must be one of {POPULATION_SOURCES}")

    @property
    def effective_drives(self) -> Drives:
        d = self.drives
        if not self.probe_on:
            d = d.with_rabi(Role.PROBE, 0.0)
        if not self.trigger_on:
            d = d.with_rabi(Role.TRIGGER, 0.0)
        return d


@dataclass
class SpectrumTable:
    """Column-oriented sweep result with one row per axis value."""

    axis: str
    columns: dict[str, np.ndarray]
    metadata: list[str] = field(default_factory=list)
    chi: ChiGrid | None = None
    wavelength: float = 795.0
    cell_length: float = 5.0

    def __post_init__(self):
        lengths = {len(v) for v in self.columns.values()}
        if len(lengths) > 1:
            raise ValueError("all columns must have the same length")
        key = self.axis_column
        if key in self.columns and np.any(np.diff(self.columns[key]) <= 0):
            raise ValueError("rows must be strictly ordered by the axis value")

    @property
    def axis_column(self) -> str:
        return f"{self.axis}_mhz"

    @property
    def axis_values(self) -> np.ndarray:
        return self.columns[self.axis_column]

    @property
    def column_names(self) -> list[str]:
        return list(self.columns)

    def __len__(self) -> int:
        return len(next(iter(self.columns.values()))) if self.columns else 0

    def column(self, name: str) -> np.ndarray:
        try:
            return self.columns[name]
        except KeyError:
            raise KeyError(f"no column {name!r}; available: {', '.join(self.columns)}") from None

    @property
    def rows(self) -> list[dict[str, float]]:
        names = list(self.columns)
        return [{k: float(self.columns[k][j]) for k in names} for j in range(len(self))]

    def record(self, j: int):
        if self.chi is None:
            raise ValueError("table carries no susceptibility data")
        return self.chi.record(j)

    def observables(self, j: int, field: Role) -> ObservablePoint:
        s = _suffix(field)
        return ObservablePoint(
            alpha_l=float(self.columns[f"alpha_l_{s}"][j]),
            n_minus_1=float(self.columns[f"n_minus_1_{s}"][j]),
            transmission=float(self.columns[f"transmission_{s}"][j]),
            dispersion_signal=float(self.columns[f"dispersion_{s}"][j]),
            group_index=float(self.columns.get(f"group_index_{s}", np.full(len(self), np.nan))[j]),
        )

    def select(self, names: Sequence[str]) -> "SpectrumTable":
        missing = [n for n in names if n not in self.columns]
        if missing:
            raise KeyError(f"no column {missing[0]!r}")
        return replace(self, columns={n: self.columns[n] for n in names})


def _suffix(field: Role) -> str:
    field = Role(field)
    if field is Role.PROBE:
        return "p"
    if field is Role.TRIGGER:
        return "t"
    raise ValueError("field must be probe or trigger")


# ---------------------------------------------------------------------------
# parallel evaluation


def worker_count(workers: int | None = None) -> int:
    """Workers to use; ``None`` reads ``TRIPOD_XPM_THREADS`` (0 = one per CPU)."""
    if workers is None:
        raw = os.environ.get("TRIPOD_XPM_THREADS", "0").strip() or "0"
        try:
            workers = int(raw)
        except ValueError:
            raise ValueError(f"TRIPOD_XPM_THREADS must be an integer, got {raw!r}") from None
    if workers < 0:
        raise ValueError("worker count must be >= 0")
    if workers == 0:
        workers = os.cpu_count() or 1
    return workers


def _chunks(n: int, workers: int) -> list[slice]:
    count = max(1, min(workers, n // MIN_CHUNK))
    edges = np.linspace(0, n, count + 1).astype(int)
    return [slice(a, b) for a, b in zip(edges[:-1], edges[1:]) if b > a]


def _map_chunks(fn: Callable[[slice], object], n: int, workers: int) -> list:
    parts = _chunks(n, workers)
    if len(parts) == 1:
        return [fn(parts[0])]
    with ThreadPoolExecutor(max_workers=len(parts)) as pool:
        return list(pool.map(fn, parts))


def evaluate_chi(scenario: Scenario, drives: Drives, dp, dt, dc,
                 populations: PopulationGrid | Populations | None = None,
                 workers: int | None = None) -> tuple[ChiGrid, PopulationGrid]:
    """Susceptibilities on a grid, chunked over worker threads.

    With ``populations=None`` they follow from ``scenario.population_source``.
    """
    dp, dt, dc = (np.ascontiguousarray(a, dtype=float) for a in np.broadcast_arrays(dp, dt, dc))
    n = dp.shape[0]
    params = scenario.params
    if populations is None and scenario.population_source == "configured":
        populations = params.populations
    if isinstance(populations, Populations):
        populations = PopulationGrid.from_populations(populations, n)

    def run(sl: slice):
        if populations is None:
            pops = population_grid(params, drives, dp[sl], dt[sl], dc[sl], scenario.oracle_model)
        else:
            pops = PopulationGrid(*(a[:, sl] for a in populations))
        try:
            grid = chi_grid(params, drives, dp[sl], dt[sl], dc[sl], pops)
        except SingularPointError as exc:
            j = sl.start + (exc.index or 0)
            raise SingularPointError(str(exc), index=j, at=exc.at) from None
        return grid, pops

    parts = _map_chunks(run, n, worker_count(workers))
    grids = [g for g, _ in parts]
    pops = PopulationGrid(*(np.concatenate([p[k] for _, p in parts], axis=1) for k in range(3)))
    chi = ChiGrid(
        dp, dt, dc,
        np.concatenate([g.chi_p_sub for g in grids], axis=1),
        np.concatenate([g.chi_t_sub for g in grids], axis=1),
        grids[0].weak_field_valid,
    )
    return chi, pops


# ---------------------------------------------------------------------------
# sweeps


def _observable_columns(chi: np.ndarray, suffix: str, params: TripodParams, prefix: str = "") -> dict:
    lam, length = params.wavelength, params.cell_length
    alpha_l = absorption_depth(chi, lam, length)
    return {
        f"{prefix}alpha_l_{suffix}": alpha_l,
        f"{prefix}n_minus_1_{suffix}": refractive_index(chi),
        f"{prefix}transmission_{suffix}": transmission(alpha_l),
        f"{prefix}dispersion_{suffix}": homodyne_dispersion_signal(chi, lam, length),
    }


def evaluate_points(scenario: Scenario, spec: ScanSpec, values, *, baseline: bool = False,
                    xpm: bool = False, group_index: bool = True,
                    workers: int | None = None) -> SpectrumTable:
    """Evaluate the sweep columns at explicit axis values."""
    values = np.asarray(values, dtype=float)
    params = scenario.params
    drives = scenario.effective_drives
    dp, dt, dc = spec.detunings(drives.detunings, values)
    chi, pops = evaluate_chi(scenario, drives, dp, dt, dc, workers=workers)

    cols: dict[str, np.ndarray] = {
        "delta_p_mhz": dp,
        "delta_t_mhz": dt,
        "delta_c_mhz": dc,
    }
    for name, arr in (("chi_p", chi.chi_p), ("chi_t", chi.chi_t)):
        cols[f"{name}_re"] = arr.real
        cols[f"{name}_im"] = arr.imag
    for i in (0, 1):
        for name, arr in (("chi_p", chi.chi_p_sub[i]), ("chi_t", chi.chi_t_sub[i])):
            cols[f"{name}{i + 1}_re"] = arr.real
            cols[f"{name}{i + 1}_im"] = arr.imag
    cols.update(_observable_columns(chi.chi_p, "p", params))
    cols.update(_observable_columns(chi.chi_t, "t", params))

    if group_index:
        h = GROUP_INDEX_STEP
        for suffix, shift in (("p", (1, 0)), ("t", (0, 1))):
            up, _ = evaluate_chi(scenario, drives, dp + h * shift[0], dt + h * shift[1], dc, pops, workers)
            dn, _ = evaluate_chi(scenario, drives, dp - h * shift[0], dt - h * shift[1], dc, pops, workers)
            attr = "chi_p" if suffix == "p" else "chi_t"
            cols[f"group_index_{suffix}"] = group_index_central(
                getattr(dn, attr).real, getattr(chi, attr).real, getattr(up, attr).real,
                h, params.wavelength,
            )

    if baseline or xpm:
        lam_p, _ = evaluate_chi(scenario, drives.with_rabi(Role.TRIGGER, 0.0), dp, dt, dc, workers=workers)
        lam_t, _ = evaluate_chi(scenario, drives.with_rabi(Role.PROBE, 0.0), dp, dt, dc, workers=workers)
        if baseline:
            cols["lambda_chi_p_re"] = lam_p.chi_p.real
            cols["lambda_chi_p_im"] = lam_p.chi_p.imag
            cols["lambda_chi_t_re"] = lam_t.chi_t.real
            cols["lambda_chi_t_im"] = lam_t.chi_t.imag
            cols.update(_observable_columns(lam_p.chi_p, "p", params, "lambda_"))
            cols.update(_observable_columns(lam_t.chi_t, "t", params, "lambda_"))
        if xpm:
            k_l = wavenumber(params.wavelength) * params.cell_length
            dn_p = refractive_index(chi.chi_p) - refractive_index(lam_p.chi_p)
            dn_t = refractive_index(chi.chi_t) - refractive_index(lam_t.chi_t)
            i_t = intensity_from_rabi(drives.trigger.rabi, params.dipole)
            i_p = intensity_from_rabi(drives.probe.rabi, params.dipole)
            cols["n2_p_cm2_per_w"] = dn_p / i_t if i_t > 0 else np.full(dp.shape, np.nan)
            cols["n2_t_cm2_per_w"] = dn_t / i_p if i_p > 0 else np.full(dp.shape, np.nan)
            cols["phase_p_rad"] = k_l * dn_p
            cols["phase_t_rad"] = k_l * dn_t

    return SpectrumTable(spec.axis, cols, chi=chi, wavelength=params.wavelength,
                         cell_length=params.cell_length)


def sweep(spec: ScanSpec, scenario: Scenario = Scenario(), *, baseline: bool = False,
          xpm: bool = False, group_index: bool = True, workers: int | None = None) -> SpectrumTable:
    """Evaluate susceptibilities and observables along ``spec``.

    Columns always include the three detunings, total and per-subsystem
    susceptibilities and the four observables per field.  ``baseline`` adds
    the three-level (other weak field off) columns prefixed ``lambda_``;
    ``xpm`` adds the cross-Kerr coefficients and phases.
    """
    return evaluate_points(scenario, spec, spec.axis_values(), baseline=baseline, xpm=xpm,
                           group_index=group_index, workers=workers)


def fig4_scenario(**overrides) -> Scenario:
    drives = Drives.make(probe=(4.0, 0.0), coupling=(70.0, 0.0), trigger=(4.0, 0.0))
    return replace(Scenario(params=TripodParams(), drives=drives), **overrides)


def fig4_spec(start: float = 0.0, stop: float = 24.0, points: int = 25,
              probe_offset: float = -0.5, trigger_lock: Lock = Lock("delta_c", 0.0)) -> ScanSpec:
    return ScanSpec("delta_c", start, stop, points,
                    locks={"delta_p": Lock("delta_c", probe_offset), "delta_t": trigger_lock})


def fig4_scan(scenario: Scenario | None = None, spec: ScanSpec | None = None,
              workers: int | None = None) -> SpectrumTable:
    """Cross-Kerr coefficients and transmissions against the coupling detuning.

    The probe is held 0.5 MHz below the coupling; by default the trigger
    follows the coupling (``delta_t = delta_c``).
    """
    scenario = fig4_scenario() if scenario is None else scenario
    spec = fig4_spec() if spec is None else spec
    table = evaluate_points(scenario, spec, spec.axis_values(), xpm=True, group_index=False,
                            workers=workers)
    return table.select(FIG4_COLUMNS)


# ---------------------------------------------------------------------------
# features


def eit_window_width(table: SpectrumTable, field: Role) -> float:
    """Full width (MHz) of the deepest transparency dip in ``Im chi``.

    The dip is the interior local minimum with the largest contrast against
    the lower of its two shoulders (the nearest local maxima, or the table
    edges).  The width is measured at half that contrast, interpolating
    linearly between samples.
    """
    x = table.axis_values
    y = table.column(f"chi_{_suffix(field)}_im")
    n = len(y)
    best = None
    for j in range(1, n - 1):
        if not (y[j] <= y[j - 1] and y[j] < y[j + 1]):
            continue
        lo = j
        while lo > 0 and y[lo - 1] >= y[lo]:
            lo -= 1
        hi = j
        while hi < n - 1 and y[hi + 1] >= y[hi]:
            hi += 1
        contrast = min(y[lo], y[hi]) - y[j]
        if contrast > 0 and (best is None or contrast > best[0]):
            best = (contrast, j, lo, hi)
    if best is None:
        raise NoFeatureError("no transparency dip in the table")
    contrast, j, lo, hi = best
    level = y[j] + 0.5 * contrast

    def crossing(indices):
        prev = j
        for k in indices:
            if y[k] >= level:
                return x[prev] + (level - y[prev]) * (x[k] - x[prev]) / (y[k] - y[prev])
            prev = k
        raise NoFeatureError("dip half level not reached")

    left = crossing(range(j - 1, lo - 1, -1))
    right = crossing(range(j + 1, hi + 1))
    return float(right - left)


def dispersion_extrema(table: SpectrumTable, field: Role,
                       column: str | None = None) -> list[tuple[float, float]]:
    """Local extrema of the dispersion signal by neighbour comparison.

    A flat run counts once and is reported at its smallest axis value.
    """
    x = table.axis_values
    y = table.column(column or f"dispersion_{_suffix(field)}")
    if len(y) < 5:
        raise ValueError("dispersion_extrema needs at least 5 rows")
    out = []
    j = 1
    n = len(y)
    while j < n - 1:
        k = j
        while k < n - 1 and y[k + 1] == y[j]:
            k += 1
        if k >= n - 1:
            break
        left, right = y[j - 1], y[k + 1]
        if (y[j] > left and y[j] > right) or (y[j] < left and y[j] < right):
            out.append((float(x[j]), float(y[j])))
        j = k + 1
    return out


def dominant_extrema(extrema: list[tuple[float, float]], fraction: float = 0.1) -> list[tuple[float, float]]:
    """Extrema whose magnitude is at least ``fraction`` of the largest one."""
    if not extrema:
        return []
    top = max(abs(s) for _, s in extrema)
    return [(x, s) for x, s in extrema if abs(s) >= fraction * top]


# ---------------------------------------------------------------------------
# fitting


FIT_PARAMETERS = (
    "gamma0", "gamma1", "gamma2", "gamma3", "density", "rabi_coupling",
    "rho_a1", "rho_a2", "rho_b1", "rho_b2",
)


def get_parameter(scenario: Scenario, name: str) -> float:
    p = scenario.params
    if name.startswith("gamma"):
        return getattr(p.decay, name)
    if name == "density":
        return p.density
    if name == "rabi_coupling":
        return scenario.drives.coupling.rabi
    if name in FIT_PARAMETERS:
        attr, idx = name[:-1], int(name[-1]) - 1
        return getattr(p.populations, attr)[idx]
    raise ValueError(f"unknown fit parameter {name!r}")


def with_parameters(scenario: Scenario, values: Mapping[str, float]) -> Scenario:
    params = scenario.params
    drives = scenario.drives
    decay = {}
    pops = {k: list(getattr(params.populations, k)) for k in ("rho_a", "rho_b", "rho_e")}
    for name, v in values.items():
        v = float(v)
        if name.startswith("gamma") and name in FIT_PARAMETERS:
            decay[name] = v
        elif name == "density":
            params = replace(params, density=v)
        elif name == "rabi_coupling":
            drives = drives.with_rabi(Role.COUPLING, v)
        elif name in FIT_PARAMETERS:
            pops[name[:-1]][int(name[-1]) - 1] = v
        else:
            raise ValueError(f"unknown fit parameter {name!r}")
    params = replace(
        params,
        decay=replace(params.decay, **decay),
        populations=Populations(**{k: tuple(v) for k, v in pops.items()}),
    )
    return replace(scenario, params=params, drives=drives)


@dataclass(frozen=True)
class Measurement:
    axis_values: np.ndarray
    values: np.ndarray
    sigma: np.ndarray | None = None

    def __post_init__(self):
        x = np.asarray(self.axis_values, dtype=float)
        y = np.asarray(self.values, dtype=float)
        if x.size == 0 or x.shape != y.shape:
            raise ValueError("measurement needs matching, non-empty axis and value arrays")
        object.__setattr__(self, "axis_values", x)
        object.__setattr__(self, "values", y)
        if self.sigma is not None:
            s = np.asarray(self.sigma, dtype=float)
            if s.shape != y.shape or np.any(s <= 0):
                raise ValueError("sigma must be positive and match the values")
            object.__setattr__(self, "sigma", s)


@dataclass(frozen=True)
class FitResult:
    scenario: Scenario
    values: dict[str, float]
    residual: float
    iterations: int
    evaluations: int
    converged: bool
    message: str


def model_column(spec: ScanSpec, column: str) -> Callable[[Scenario, np.ndarray], np.ndarray]:
    """Model for one sweep column at arbitrary axis values."""
    needs_xpm = column.startswith(("n2_", "phase_"))
    needs_baseline = column.startswith("lambda_")
    needs_gi = column.startswith("group_index_")

    def evaluate(scenario: Scenario, x: np.ndarray) -> np.ndarray:
        table = evaluate_points(scenario, spec, x, baseline=needs_baseline, xpm=needs_xpm,
                                group_index=needs_gi, workers=1)
        return table.column(column)

    return evaluate


def fit_parameters(data: Measurement, scenario: Scenario, model: Callable[[Scenario, np.ndarray], np.ndarray],
                   free: Sequence[str], bounds: Mapping[str, tuple[float, float]] | None = None,
                   max_iter: int = 4000, xatol: float = 1e-10, fatol: float = 1e-30) -> FitResult:
    """Bounded Nelder-Mead fit of ``free`` parameters to ``data``.

    The search starts from the scenario's values and runs in coordinates
    scaled to the unit box defined by ``bounds`` (default: half to twice the
    start, populations capped at one).  The residual is the weighted sum of
    squares relative to the weighted data norm.
    """
    free = list(free)
    if not free:
        raise ValueError("no free parameters")
    for name in free:
        if name not in FIT_PARAMETERS:
            raise ValueError(f"unknown fit parameter {name!r}")
    start = np.array([get_parameter(scenario, n) for n in free])
    box = []
    for name, s in zip(free, start):
        if bounds and name in bounds:
            lo, hi = (float(v) for v in bounds[name])
        else:
            lo, hi = 0.5 * s, 2.0 * s
            if name.startswith("rho_"):
                hi = min(hi, 1.0)
        if not lo < hi:
            raise ValueError(f"empty bounds for {name!r}")
        box.append((lo, hi))
    box = np.array(box)
    width = box[:, 1] - box[:, 0]
    u0 = np.clip((start - box[:, 0]) / width, 0.0, 1.0)

    w = np.ones_like(data.values) if data.sigma is None else 1.0 / data.sigma
    norm = float(np.sum((data.values * w) ** 2)) or 1.0

    def unpack(u):
        return with_parameters(scenario, dict(zip(free, box[:, 0] + np.clip(u, 0.0, 1.0) * width)))

    def objective(u):
        try:
            sc = unpack(u)
            pred = model(sc, data.axis_values)
        except (ValueError, ArithmeticError):
            return 1e300
        r = float(np.sum(((pred - data.values) * w) ** 2)) / norm
        return r if math.isfinite(r) else 1e300

    options = {"xatol": xatol, "fatol": fatol, "adaptive": len(free) > 3}
    nit = nfev = 0
    res = None
    # restart from the best vertex until a fresh simplex stops improving;
    # a collapsed simplex otherwise stalls against a box face
    for _ in range(MAX_RESTARTS):
        prev = res
        res = scipy.optimize.minimize(
            objective, u0 if prev is None else prev.x, method="Nelder-Mead",
            bounds=[(0.0, 1.0)] * len(free), options={**options, "maxiter": max(max_iter - nit, 1)},
        )
        nit += int(res.nit)
        nfev += int(res.nfev)
        if prev is not None and res.fun >= prev.fun * (1 - 1e-9):
            break
        if nit >= max_iter:
            break
    best = unpack(res.x)
    return FitResult(
        scenario=best,
        values={n: get_parameter(best, n) for n in free},
        residual=float(res.fun),
        iterations=nit,
        evaluations=nfev,
        converged=bool(res.success),
        message=str(res.message),
    )
