import numpy as np
import pytest

from tripod_xpm import _kernels_py, kernels
from tripod_xpm.model import to_angular

pytestmark = pytest.mark.skipif(kernels.BACKEND != "cython", reason="extension not built")


def _inputs(rng, n=500, op=1.15, ot=2.83, oc=70.0, gammas=(3.5, 0.5, 1.5, 1.0)):
    dp, dt, dc = (to_angular(rng.uniform(-80, 80, n)) for _ in range(3))
    g = tuple(float(to_angular(x)) for x in gammas)
    r = [float(to_angular(x)) for x in (op, ot, oc)]
    return dp, dt, dc, g, *r


def test_compiled_matches_numpy(rng):
    dp, dt, dc, g, op, ot, oc = _inputs(rng)
    ra = rng.uniform(0, 0.5, dp.size)
    args = (dp, dt, dc, g, op, ot, oc, ra, 0.2, 0.001, 1e3)
    a = _kernels_py.closed_form_subsystem(*args)
    b = kernels.closed_form_subsystem(*args)
    for k in (0, 1):
        np.testing.assert_allclose(b[k], a[k], rtol=1e-13)
    assert a[2] == b[2] == -1


@pytest.mark.parametrize("op,ot", [(0.0, 2.0), (2.0, 0.0), (0.0, 0.0)])
def test_compiled_matches_numpy_with_fields_off(rng, op, ot):
    dp, dt, dc, g, _, _, oc = _inputs(rng, op=op, ot=ot)
    args = (dp, dt, dc, g, float(to_angular(op)), float(to_angular(ot)), oc, 0.3, 0.2, 0.0, 1e3)
    a = _kernels_py.closed_form_subsystem(*args)
    b = kernels.closed_form_subsystem(*args)
    for k in (0, 1):
        np.testing.assert_allclose(b[k], a[k], rtol=1e-13, atol=0)


def test_singular_flags_agree():
    # gamma2 = 0 with the probe on two-photon resonance: the dark-state term is infinite
    g = tuple(float(to_angular(x)) for x in (3.5, 0.0, 0.0, 0.0))
    dp = to_angular(np.array([0.0, 1.0, 2.0]))
    z = np.zeros(3)
    oc = float(to_angular(70.0))
    tol = 1e-3 * g[0]
    a = _kernels_py.closed_form_subsystem(dp, z, z, g, 0.0, 0.0, oc, 0.3, 0.2, 0.0, tol)
    b = kernels.closed_form_subsystem(dp, z, z, g, 0.0, 0.0, oc, 0.3, 0.2, 0.0, tol)
    assert a[0][0] == 0 and b[0][0] == 0
    np.testing.assert_allclose(b[0], a[0], rtol=1e-13)
    assert a[2] == b[2]


def test_two_dimensional_input_shape(rng):
    dp, dt, dc, g, op, ot, oc = _inputs(rng, n=12)
    shape = (3, 4)
    args = (dp.reshape(shape), dt.reshape(shape), dc.reshape(shape), g, op, ot, oc, 0.3, 0.2, 0.0, 1e3)
    b = kernels.closed_form_subsystem(*args)
    assert b[0].shape == shape
    np.testing.assert_allclose(b[0], _kernels_py.closed_form_subsystem(*args)[0], rtol=1e-13)
