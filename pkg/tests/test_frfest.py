import numpy as np
import pytest
from scipy import signal

from hydrocyl.frf import FrfData
from hydrocyl.frfest import h1_estimate, peak_frequency, slope_db_per_decade, smooth
from hydrocyl.linear import frf_eval, reduced_tf
from hydrocyl.sim import InputSignal, sample

DT = 1e-4
N = 2**12


def _noise(n, seed=0):
    return np.random.default_rng(seed).standard_normal(n)


def test_identity_system():
    u = _noise(8 * N)
    frf = h1_estimate(u, u, DT, N)
    np.testing.assert_allclose(frf.response, 1.0, atol=1e-12)
    np.testing.assert_allclose(frf.coherence, 1.0, atol=1e-12)
    assert frf.freqs[0] == pytest.approx(1 / (N * DT))
    assert frf.freqs[-1] == pytest.approx(0.5 / DT)
    assert len(frf) == N // 2


def test_static_gain():
    u = _noise(8 * N, 1)
    frf = h1_estimate(u, 2.0 * u, DT, N)
    np.testing.assert_allclose(frf.response, 2.0, atol=1e-12)
    np.testing.assert_allclose(frf.phase_deg, 0.0, atol=1e-9)


def test_pure_delay_phase():
    u = _noise(16 * N, 2)
    y = np.concatenate([[0.0, 0.0], u[:-2]])
    frf = h1_estimate(u, y, DT, N).band(1, 500)
    expected = -360.0 * frf.freqs * 2 * DT
    np.testing.assert_allclose(frf.phase_deg, expected, atol=2.0)
    np.testing.assert_allclose(frf.magnitude, 1.0, atol=0.02)


def test_uncorrelated_noise_is_averaged_out():
    u = _noise(64 * N, 3)
    y = 3.0 * u + 0.5 * _noise(64 * N, 4)
    frf = h1_estimate(u, y, DT, N)
    assert np.median(np.abs(frf.response - 3.0)) < 0.05
    assert np.median(frf.coherence) == pytest.approx(9 / 9.25, abs=0.02)


def test_matches_scipy_csd_ratio():
    u = _noise(20 * N, 5)
    b, a = signal.butter(2, 0.1)
    y = signal.lfilter(b, a, u)
    frf = h1_estimate(u, y, DT, N)
    f, Puy = signal.csd(u, y, fs=1 / DT, window="hann", nperseg=N, noverlap=N // 2,
                        detrend=False, scaling="spectrum")
    _, Puu = signal.welch(u, fs=1 / DT, window="hann", nperseg=N, noverlap=N // 2,
                          detrend=False, scaling="spectrum")
    np.testing.assert_allclose(frf.freqs, f[1:])
    np.testing.assert_allclose(frf.response, (Puy / Puu)[1:], rtol=1e-9, atol=1e-15)
    _, coh = signal.coherence(u, y, fs=1 / DT, window="hann", nperseg=N, noverlap=N // 2,
                              detrend=False)
    np.testing.assert_allclose(frf.coherence, coh[1:], rtol=1e-7)


def test_chirp_through_second_order_system(p):
    G = reduced_tf(p)
    sysd = signal.cont2discrete(([G.num[0]], list(G.den[::-1])), DT, method="bilinear")
    b, a = np.squeeze(sysd[0]), sysd[1]
    sig = InputSignal("down_chirp", 1e-3, f_start=600, f_end=1, duration=60)
    t = np.arange(0, 60 + DT / 2, DT)
    u = sample(sig, t)
    y = signal.lfilter(b, a, u)
    frf = smooth(h1_estimate(u, y, DT, 2**14), 2).band(2, 100)
    exact = frf_eval(G, frf.freqs)
    assert np.max(np.abs(frf.magnitude_db - exact.magnitude_db)) < 1.0
    phase_err = np.angle(frf.response / exact.response, deg=True)
    assert np.max(np.abs(phase_err)) < 5.0


def test_input_free_bins_are_invalid():
    t = np.arange(8 * N) * DT
    df = 1 / (N * DT)
    # tones on exact bin centres, so a rectangular window leaks nothing
    u = np.sin(2 * np.pi * 41 * df * t) + 0.3 * np.sin(2 * np.pi * 410 * df * t)
    frf = h1_estimate(u, u, DT, N, window="rectangular")
    assert frf.valid.sum() == 2
    assert np.all(np.isnan(frf.response[~frf.valid]))
    assert np.all(np.isnan(frf.coherence[~frf.valid]))
    np.testing.assert_allclose(frf.response[frf.valid], 1.0)


def test_zero_input_all_invalid():
    frf = h1_estimate(np.zeros(4 * N), _noise(4 * N), DT, N)
    assert not frf.valid.any()


@pytest.mark.parametrize("kwargs", [
    dict(segment_length=N, overlap_fraction=1.0),
    dict(segment_length=N, window="kaiser"),
    dict(segment_length=4 * N),
])
def test_bad_arguments(kwargs):
    u = _noise(4 * N)
    with pytest.raises(ValueError):
        h1_estimate(u, u, DT, **kwargs)


def test_shape_mismatch():
    with pytest.raises(ValueError):
        h1_estimate(np.ones(4 * N), np.ones(4 * N - 1), DT, N)


def _frf(values, valid=None):
    values = np.asarray(values, dtype=complex)
    return FrfData(np.arange(1, values.size + 1, dtype=float), values, None, valid)


def test_smoothing_zero_width_is_identity():
    x = _frf(_noise(50) + 1j * _noise(50, 9))
    out = smooth(x, 0)
    np.testing.assert_array_equal(out.response, x.response)
    assert out.response is not x.response


def test_smoothing_preserves_constant():
    out = smooth(_frf(np.full(40, 2 - 3j)), 2)
    np.testing.assert_allclose(out.response, 2 - 3j)


def test_smoothing_preserves_linear_trend_in_interior():
    vals = np.arange(30, dtype=float)
    out = smooth(_frf(vals), 3)
    np.testing.assert_allclose(out.response.real[3:-3], vals[3:-3])


def test_smoothing_reduces_white_noise_variance():
    h = 2
    x = _frf(_noise(200000, 11))
    out = smooth(x, h)
    ratio = np.var(out.response.real[h:-h]) / np.var(x.response.real)
    assert ratio == pytest.approx(1 / (2 * h + 1), rel=0.03)


def test_smoothing_skips_invalid_bins():
    vals = np.array([1.0, 1.0, 1e9, 1.0, 1.0])
    valid = np.array([True, True, False, True, True])
    out = smooth(_frf(vals, valid), 2)
    assert np.isnan(out.response[2])
    np.testing.assert_allclose(out.response[valid], 1.0)


def test_smoothing_rejects_negative_width():
    with pytest.raises(ValueError):
        smooth(_frf(np.ones(5)), -1)


def test_peak_and_slope_on_analytic_response(p):
    f = np.geomspace(1, 5000, 3000)
    frf = frf_eval(reduced_tf(p), f)
    wn = p.derived.omega_c * np.sqrt(1 - 2 * p.derived.zeta**2) / (2 * np.pi)
    assert peak_frequency(frf, 5, 600) == pytest.approx(wn, rel=2e-3)
    assert slope_db_per_decade(frf, 1000, 5000) == pytest.approx(-40, abs=0.5)
    assert slope_db_per_decade(frf, 1, 5) == pytest.approx(0, abs=0.1)


def test_peak_requires_valid_bins():
    frf = _frf([1.0, 2.0], np.array([False, False]))
    with pytest.raises(ValueError):
        peak_frequency(frf)
    with pytest.raises(ValueError):
        slope_db_per_decade(frf, 0, 10)
