import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tripod_xpm.calibration import (
    REFERENCE_PAIRS,
    BeamSpec,
    calibrate_dipole,
    intensity_from_rabi,
    peak_intensity,
    rabi_from_intensity,
    rabi_from_power,
)
from tripod_xpm.model import RB_D1_DIPOLE


def test_peak_intensity():
    assert peak_intensity(BeamSpec(8e-6, 0.1)) == pytest.approx(1.0186e-3, rel=1e-4)
    assert peak_intensity(BeamSpec(0.0, 0.1)) == 0.0
    assert peak_intensity(BeamSpec(32e-6, 0.1)) == pytest.approx(4 * peak_intensity(BeamSpec(8e-6, 0.1)))


def test_one_megahertz_intensity_order():
    # the intensity for a 1 MHz Rabi frequency is of order 0.1 mW/cm^2
    i1 = intensity_from_rabi(1.0)
    assert 5e-5 < i1 < 4e-4
    scaled = peak_intensity(BeamSpec(8e-6, 0.1)) / rabi_from_power(BeamSpec(8e-6, 0.1)) ** 2
    assert scaled == pytest.approx(i1, rel=1e-12)


@pytest.mark.parametrize("power,lo,hi", [(8e-6, 3.0, 3.6), (300e-6, 18.0, 21.0), (14e-6, 4.0, 4.5)])
def test_rabi_from_power_ranges(power, lo, hi):
    assert lo <= rabi_from_power(BeamSpec(power, 0.1), RB_D1_DIPOLE) <= hi


def test_calibrate_dipole_examples():
    single = calibrate_dipole(REFERENCE_PAIRS[:1])
    assert single == pytest.approx(2.3e-29, rel=0.02)
    three = calibrate_dipole(REFERENCE_PAIRS)
    assert three == pytest.approx(single, rel=0.05)
    scaled = [(BeamSpec(4 * b.power, b.diameter_1e), 2 * r) for b, r in REFERENCE_PAIRS]
    assert calibrate_dipole(scaled) == pytest.approx(three, rel=1e-12)


def test_calibrate_dipole_errors():
    with pytest.raises(ValueError):
        calibrate_dipole([])
    with pytest.raises(ValueError):
        calibrate_dipole([(BeamSpec(0.0, 0.1), 3.0)])
    with pytest.raises(ValueError):
        BeamSpec(1e-6, 0.0)
    with pytest.raises(ValueError):
        rabi_from_intensity(1e-3, dipole=0.0)


@settings(max_examples=100, deadline=None)
@given(st.floats(1e-7, 1e-1), st.floats(0.01, 1.0), st.floats(1.5, 10))
def test_scaling_laws(power, d, k):
    base = rabi_from_power(BeamSpec(power, d))
    assert rabi_from_power(BeamSpec(k * k * power, d)) == pytest.approx(k * base, rel=1e-12)
    assert rabi_from_power(BeamSpec(power, k * d)) == pytest.approx(base / k, rel=1e-12)


@settings(max_examples=100, deadline=None)
@given(st.floats(1e-7, 1e-1), st.floats(0.01, 1.0), st.floats(0.1, 100))
def test_round_trip(power, d, rabi):
    beam = BeamSpec(power, d)
    mu = calibrate_dipole([(beam, rabi)])
    assert rabi_from_power(beam, mu) == pytest.approx(rabi, rel=1e-12)
    assert rabi_from_intensity(intensity_from_rabi(rabi, mu), mu) == pytest.approx(rabi, rel=1e-12)
