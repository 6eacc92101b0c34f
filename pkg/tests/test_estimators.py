import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from hydrocyl import CylinderSimulator, H1Estimator, LinearizedCylinder, PlantParameters
from hydrocyl.linear import OperatingPoint, closed_linear_tf, frf_eval
from hydrocyl.params import ParameterError
from hydrocyl.sim import integrate


def test_get_params_and_clone():
    est = CylinderSimulator(model="full", dt=5e-5, method="rk4")
    params = est.get_params()
    assert params["model"] == "full" and params["dt"] == 5e-5
    twin = clone(est)
    assert twin.get_params() == params
    est.set_params(model="reduced")
    assert est.model == "reduced" and twin.model == "full"


def test_simulator_matches_integrate(p):
    u = np.full(1001, 5e-4)
    est = CylinderSimulator().fit()
    out = est.transform(u)
    traj = integrate("reduced", p, 5e-4, 0.1)
    assert out.shape == (1001, len(est.columns_))
    np.testing.assert_array_equal(out[:, est.columns_.index("x")], traj["x"])


def test_simulator_single_output_and_column_input():
    est = CylinderSimulator(output="x_dot")
    v = est.fit_transform(np.full((201, 1), 8e-4))
    assert v.shape == (201,)
    assert v[-1] > 0


def test_simulator_params_mapping():
    est = CylinderSimulator(params={"m": 40.0}).fit()
    assert est.params_.m == 40.0
    assert est.derived_.omega_c == pytest.approx(447.4276358940093 / np.sqrt(2))


def test_simulator_validation():
    with pytest.raises(ValueError):
        CylinderSimulator(model="half").fit()
    with pytest.raises(ValueError):
        CylinderSimulator(output="PA").fit()
    with pytest.raises(ParameterError):
        CylinderSimulator(params={"m": -1.0}).fit()
    with pytest.raises(NotFittedError):
        CylinderSimulator().transform(np.zeros(10))
    est = CylinderSimulator().fit()
    with pytest.raises(ValueError):
        est.transform([0.0, np.nan, 0.0])
    with pytest.raises(ValueError):
        est.transform(np.zeros((5, 2)))


def test_h1_estimator_static_gain():
    rng = np.random.default_rng(0)
    u = rng.standard_normal(2**15)
    est = H1Estimator(segment_length=2**12).fit(u, -4 * u)
    np.testing.assert_allclose(est.frf_.response, -4.0, atol=1e-10)
    np.testing.assert_allclose(est.predict([10.0, 123.4]), [-4.0, -4.0], atol=1e-10)
    assert np.all(np.isnan(est.predict([0.01])))
    assert est.coherence_.shape == est.freqs_.shape


def test_h1_estimator_errors():
    with pytest.raises(ValueError):
        H1Estimator(segment_length=2**10).fit(np.ones(4096), np.ones(4095))
    with pytest.raises(NotFittedError):
        H1Estimator().predict([1.0])


def test_linearized_cylinder(p):
    est = LinearizedCylinder(z_hat=4.75e-4, pl_hat=5e5).fit()
    f = np.geomspace(1, 500, 20)
    expected = frf_eval(closed_linear_tf(OperatingPoint(4.75e-4, 5e5), p), f).response
    np.testing.assert_allclose(est.predict(f), expected)
    assert est.critical_gain_ == pytest.approx(0.485)
    assert est.coefficients_.Cqp > 0


def test_linearized_cylinder_plain_response():
    est = LinearizedCylinder().fit()
    assert est.coefficients_ is None
    assert abs(est.predict([1e-3])[0]) == pytest.approx(1 / 4.85e-3, rel=1e-6)


def test_linearized_cylinder_custom_params():
    q = PlantParameters().replace(E=2e9)
    a = LinearizedCylinder(params=q).fit()
    b = clone(a).fit()
    assert b.derived_.omega_c == a.derived_.omega_c
