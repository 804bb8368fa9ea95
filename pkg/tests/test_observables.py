import math
from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tripod_xpm.model import DecayRates, Drives, Role
from tripod_xpm.observables import (
    ObservablePoint,
    absorption_depth,
    group_index,
    homodyne_dispersion_signal,
    refractive_index,
    transmission,
    wavenumber,
)
from tripod_xpm.susceptibility import chi_grid, chi_total

LAM, LEN = 795.0, 5.0


def test_absorption_depth_values():
    assert absorption_depth(0.0 + 0j, LAM, LEN) == 0.0
    im = math.log(1 / 0.26) / (wavenumber(LAM) * LEN)
    assert absorption_depth(1j * im, LAM, LEN) == pytest.approx(1.347, abs=1e-3)


def test_absorption_depth_warns_outside_dilute_limit():
    with pytest.warns(RuntimeWarning):
        absorption_depth(0.5j, LAM, LEN)


def test_transmission_values():
    assert transmission(0.0) == 1.0
    assert transmission(0.511) == pytest.approx(0.60, abs=1e-3)
    assert transmission(1.347) == pytest.approx(0.26, abs=1e-3)


def test_refractive_index():
    assert refractive_index(2e-6) == pytest.approx(1e-6)
    assert refractive_index(0j) == 0.0


@settings(max_examples=100, deadline=None)
@given(st.floats(-1e-3, 1e-3), st.floats(0, 1e-3), st.floats(0, 1e-3))
def test_transmission_of_depth_is_exponential(re, im, im2):
    t = transmission(absorption_depth(complex(re, im), LAM, LEN))
    assert t == pytest.approx(math.exp(-wavenumber(LAM) * im * LEN), rel=1e-12)
    assert 0 < t <= 1
    t2 = transmission(absorption_depth(complex(re, im + im2), LAM, LEN))
    assert t2 <= t


@settings(max_examples=100, deadline=None)
@given(st.floats(-1e-3, 1e-3), st.floats(0, 1e-3), st.floats(0, 3), st.floats(0, 3))
def test_homodyne_signal_is_odd_in_dispersion(re, im, er, e):
    a = homodyne_dispersion_signal(complex(re, im), LAM, LEN, er, e)
    b = homodyne_dispersion_signal(complex(-re, im), LAM, LEN, er, e)
    assert a == -b


def test_homodyne_signal_zero_without_dispersion():
    assert homodyne_dispersion_signal(1e-5j, LAM, LEN) == 0.0
    with pytest.raises(ValueError):
        homodyne_dispersion_signal(1e-6, LAM, LEN, -1.0, 1.0)


def test_dispersion_zero_at_symmetric_dark_point(params):
    p = replace(params, decay=DecayRates(3.5, 0.5, 1.0, 1.0))
    d = Drives.make(probe=(4.0, 0.0), coupling=(70.0, 0.0), trigger=(4.0, 0.0))
    rec = chi_total(p, d)
    assert abs(rec.chi_p.real) < 1e-12 * abs(rec.chi_p)
    dp = np.array([-1.3, 1.3])
    g = chi_grid(p, d, dp, dp, 0.0)
    assert g.chi_p[0].real == pytest.approx(-g.chi_p[1].real, rel=1e-9)


def test_on_resonance_absorbs_less_than_off(params, weak_drives):
    at0 = absorption_depth(chi_total(params, weak_drives).chi_p, LAM, LEN)
    at40 = absorption_depth(chi_total(params, weak_drives.with_detunings(dp=40.0)).chi_p, LAM, LEN)
    assert at0 < at40


def test_group_index_constant_profile():
    assert group_index([2e-6, 2e-6, 2e-6], 0.01, LAM) == pytest.approx(1 + 1e-6, rel=1e-15)


def test_group_index_needs_three_samples():
    with pytest.raises(ValueError):
        group_index([1.0, 2.0], 0.01, LAM)
    with pytest.raises(ValueError):
        group_index([1.0, 2.0, 3.0], 0.01, LAM, index=0)


def _group_index_at(params, drives, field, h=0.01):
    x = np.array([-h, 0.0, h])
    if field is Role.PROBE:
        g = chi_grid(params, drives, x, 0.0, 0.0)
        return group_index(g.chi_p.real, h, params.wavelength)
    g = chi_grid(params, drives, 0.0, x, 0.0)
    return group_index(g.chi_t.real, h, params.wavelength)


def test_slow_light_at_dark_point(params, weak_drives):
    assert _group_index_at(params, weak_drives, Role.PROBE) > 100


def test_probe_and_trigger_group_indices_comparable(params, weak_drives):
    ng_p = _group_index_at(params, weak_drives, Role.PROBE)
    ng_t = _group_index_at(params, weak_drives, Role.TRIGGER)
    assert 1 / 3 < ng_p / ng_t < 3


def test_group_index_converges_with_spacing(params, weak_drives):
    a = _group_index_at(params, weak_drives, Role.PROBE, 0.02)
    b = _group_index_at(params, weak_drives, Role.PROBE, 0.01)
    assert abs(a - b) < 0.01 * abs(b)


def test_observable_point_from_chi():
    pt = ObservablePoint.from_chi(complex(2e-6, 1e-6), LAM, LEN)
    assert pt.n_minus_1 == pytest.approx(1e-6)
    assert pt.transmission == pytest.approx(math.exp(-pt.alpha_l))
    assert math.isnan(pt.group_index)
