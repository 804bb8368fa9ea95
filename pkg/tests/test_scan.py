from dataclasses import replace

import numpy as np
import pytest

from tripod_xpm import scan
from tripod_xpm.model import Drives, Role
from tripod_xpm.scan import Lock, ScanSpec, Scenario, SpectrumTable


def test_spec_validation():
    with pytest.raises(ValueError):
        ScanSpec("delta_x", -1, 1, 11)
    with pytest.raises(ValueError):
        ScanSpec("delta_p", 1, -1, 11)
    with pytest.raises(ValueError):
        ScanSpec("delta_p", -1, 1, 2)
    with pytest.raises(ValueError):
        ScanSpec("delta_p", -1, 1, 11, {"delta_p": Lock("delta_c")})
    with pytest.raises(ValueError):
        ScanSpec("delta_p", -1, 1, 11, {"delta_t": Lock("delta_t")})


def test_lock_cycle_rejected():
    with pytest.raises(ValueError, match="cycle"):
        ScanSpec("delta_p", -1, 1, 11, {"delta_t": Lock("delta_c"), "delta_c": Lock("delta_t")})


def test_chained_locks_resolve():
    spec = ScanSpec("delta_c", 0, 4, 5, {"delta_p": Lock("delta_t", 1.0), "delta_t": Lock("delta_c", 2.0)})
    dp, dt, dc = spec.detunings((9.0, 9.0, 9.0), spec.axis_values())
    assert np.array_equal(dt, dc + 2.0)
    assert np.array_equal(dp, dt + 1.0)


def test_grid_refinement_reproduces_points():
    coarse = ScanSpec("delta_p", -20, 20, 101).axis_values()
    fine = ScanSpec("delta_p", -20, 20, 201).axis_values()
    assert np.array_equal(fine[::2], coarse)


def test_results_independent_of_worker_count(monkeypatch):
    spec = ScanSpec("delta_p", -20, 20, 301)
    sc = Scenario(drives=Drives.make(probe=(4.0, 0.0), coupling=(70.0, 0.0), trigger=(4.0, 0.0)),
                  population_source="oracle")
    one = scan.sweep(spec, sc, xpm=True, workers=1)
    four = scan.sweep(spec, sc, xpm=True, workers=4)
    monkeypatch.setenv("TRIPOD_XPM_THREADS", "3")
    env = scan.sweep(spec, sc, xpm=True)
    for name in one.column_names:
        assert np.array_equal(one.column(name), four.column(name), equal_nan=True), name
        assert np.array_equal(one.column(name), env.column(name), equal_nan=True), name


def test_worker_count_env(monkeypatch):
    monkeypatch.setenv("TRIPOD_XPM_THREADS", "2")
    assert scan.worker_count() == 2
    assert scan.worker_count(5) == 5
    monkeypatch.setenv("TRIPOD_XPM_THREADS", "bogus")
    with pytest.raises(ValueError):
        scan.worker_count()


def test_fig4_scan_shape_and_locks():
    table = scan.fig4_scan()
    assert table.column_names == list(scan.FIG4_COLUMNS)
    assert len(table) == 25
    dc = table.column("delta_c_mhz")
    assert dc[0] == 0.0 and dc[-1] == 24.0
    dp, dt, _ = scan.fig4_spec().detunings((0.0, 0.0, 0.0), dc)
    assert np.array_equal(dp, dc - 0.5)
    assert np.array_equal(dt, dc)


def test_table_rejects_unordered_axis():
    with pytest.raises(ValueError):
        SpectrumTable("delta_p", {"delta_p_mhz": np.array([0.0, 0.0, 1.0])})
    t = SpectrumTable("delta_p", {"delta_p_mhz": np.array([0.0, 1.0, 2.0])})
    with pytest.raises(KeyError):
        t.column("chi_p_re")


def _synthetic(x, im=None, disp=None):
    cols = {"delta_p_mhz": x}
    if im is not None:
        cols["chi_p_im"] = im
    if disp is not None:
        cols["dispersion_p"] = disp
    return SpectrumTable("delta_p", cols)


def test_window_width_of_synthetic_dip():
    x = np.linspace(-40, 40, 801)
    width = 8.0
    im = 1.0 - 1.0 / (1.0 + (2 * x / width) ** 2)
    assert scan.eit_window_width(_synthetic(x, im=im), Role.PROBE) == pytest.approx(width, abs=x[1] - x[0])


def test_window_width_without_dip():
    x = np.linspace(-1, 1, 21)
    with pytest.raises(scan.NoFeatureError):
        scan.eit_window_width(_synthetic(x, im=x ** 3), Role.PROBE)


def test_monotone_dispersion_has_no_extrema():
    x = np.linspace(-1, 1, 51)
    assert scan.dispersion_extrema(_synthetic(x, disp=np.tanh(x)), Role.PROBE) == []


def test_symmetric_extrema():
    x = np.linspace(-40, 40, 801)
    disp = x / (1 + x ** 2) + 0.003 * np.exp(-(x - 30) ** 2)
    raw = scan.dispersion_extrema(_synthetic(x, disp=disp), Role.PROBE)
    ext = scan.dominant_extrema(raw)
    assert len(raw) == 4
    assert [e[0] for e in ext] == pytest.approx([-1.0, 1.0], abs=0.1)


def test_plateau_counted_once():
    x = np.arange(7.0)
    disp = np.array([0, 1, 2, 2, 2, 1, 0.0])
    assert scan.dispersion_extrema(_synthetic(x, disp=disp), Role.PROBE) == [(2.0, 2.0)]


FIT_SPEC = ScanSpec("delta_p", -30, 30, 61)
FIT_MODEL = scan.model_column(FIT_SPEC, "chi_p_im")


def _fit_truth():
    return Scenario(drives=Drives.make(probe=(4.0, 0.0), coupling=(50.0, 0.0), trigger=(4.0, 0.0)))


def test_fit_round_trip():
    truth = _fit_truth()
    data = scan.Measurement(FIT_SPEC.axis_values(), FIT_MODEL(truth, FIT_SPEC.axis_values()))
    start = scan.with_parameters(truth, {"gamma0": 4.2, "rabi_coupling": 42.0})
    res = scan.fit_parameters(data, start, FIT_MODEL, ["gamma0", "rabi_coupling"])
    assert res.converged
    assert res.residual < 1e-12
    assert res.values["gamma0"] == pytest.approx(get(truth, "gamma0"), rel=0.01)
    assert res.values["rabi_coupling"] == pytest.approx(50.0, rel=0.01)


def get(sc, name):
    return scan.get_parameter(sc, name)


def test_fit_with_noise_and_two_starts(rng):
    truth = _fit_truth()
    x = FIT_SPEC.axis_values()
    clean = FIT_MODEL(truth, x)
    noisy = clean * (1 + 0.02 * rng.standard_normal(x.size))
    data = scan.Measurement(x, noisy)
    fits = []
    for g0, oc in ((4.2, 42.0), (3.0, 60.0)):
        start = scan.with_parameters(truth, {"gamma0": g0, "rabi_coupling": oc})
        res = scan.fit_parameters(data, start, FIT_MODEL, ["gamma0", "rabi_coupling"],
                                  bounds={"gamma0": (2.0, 6.0), "rabi_coupling": (30.0, 80.0)})
        assert res.values["gamma0"] == pytest.approx(get(truth, "gamma0"), rel=0.1)
        assert res.values["rabi_coupling"] == pytest.approx(50.0, rel=0.1)
        fits.append(res.values)
    assert fits[0]["gamma0"] == pytest.approx(fits[1]["gamma0"], rel=1e-3)
    assert fits[0]["rabi_coupling"] == pytest.approx(fits[1]["rabi_coupling"], rel=1e-3)


def test_fit_parameter_errors():
    sc = _fit_truth()
    data = scan.Measurement([0.0], [1.0])
    with pytest.raises(ValueError):
        scan.fit_parameters(data, sc, FIT_MODEL, [])
    with pytest.raises(ValueError):
        scan.fit_parameters(data, sc, FIT_MODEL, ["wavelength"])
    with pytest.raises(ValueError):
        scan.fit_parameters(data, sc, FIT_MODEL, ["gamma0"], bounds={"gamma0": (2.0, 2.0)})
    with pytest.raises(ValueError):
        scan.Measurement([0.0, 1.0], [1.0])
    with pytest.raises(ValueError):
        scan.Measurement([0.0], [1.0], [0.0])


def test_with_parameters_round_trip():
    sc = _fit_truth()
    vals = {"gamma1": 0.7, "density": 2e12, "rho_a1": 0.3, "rho_b2": 0.1}
    out = scan.with_parameters(sc, vals)
    for k, v in vals.items():
        assert scan.get_parameter(out, k) == v
    assert replace(out) == out
