"""H1 frequency-response estimation from sampled input/output records."""

from __future__ import annotations

import numpy as np

from .frf import FrfData

__all__ = ["h1_estimate", "smooth", "segment_spectra", "peak_frequency", "slope_db_per_decade"]

DEFAULT_SEGMENT = 2**14


def _window(kind: str, n: int) -> np.ndarray:
    if kind == "hann":
        # periodic Hann, the usual choice for averaged spectra
        return 0.5 - 0.5 * np.cos(2.0 * np.pi * np.arange(n) / n)
    if kind in ("rectangular", "boxcar"):
        return np.ones(n)
    raise ValueError(f"unknown window {kind!r}")


def segment_spectra(u, y, segment_length: int, overlap_fraction: float = 0.5,
                    window: str = "hann"):
    """Averaged one-sided auto and cross spectra (unnormalised).

    Returns ``(S_uu, S_yy, S_uy)`` for the rfft bins of one segment with
    ``S_uy = mean(conj(U) * Y)``. The common scale factor cancels in H1
    and in the coherence, so none is applied.
    """
    u = np.asarray(u, dtype=float)
    y = np.asarray(y, dtype=float)
    n = int(segment_length)
    step = max(1, int(round(n * (1.0 - overlap_fraction))))
    starts = range(0, u.size - n + 1, step)
    win = _window(window, n)
    S_uu = np.zeros(n // 2 + 1)
    S_yy = np.zeros(n // 2 + 1)
    S_uy = np.zeros(n // 2 + 1, dtype=complex)
    count = 0
    for i in starts:
        U = np.fft.rfft(win * u[i:i + n])
        Y = np.fft.rfft(win * y[i:i + n])
        S_uu += (U.conj() * U).real
        S_yy += (Y.conj() * Y).real
        S_uy += U.conj() * Y
        count += 1
    return S_uu / count, S_yy / count, S_uy / count


def h1_estimate(
    u,
    y,
    dt: float,
    segment_length: int = DEFAULT_SEGMENT,
    overlap_fraction: float = 0.5,
    window: str = "hann",
    floor: float = 1e-10,
) -> FrfData:
    """H1 estimate ``S_uy / S_uu`` with magnitude-squared coherence.

    Segments of ``segment_length`` samples overlap by ``overlap_fraction``
    and are tapered by ``window``. The DC bin is dropped. Bins whose input
    auto spectrum is below ``floor`` times its maximum are flagged invalid
    (response and coherence NaN).
    """
    u = np.asarray(u, dtype=float)
    y = np.asarray(y, dtype=float)
    if u.shape != y.shape or u.ndim != 1:
        raise ValueError("u and y must be 1-D arrays of equal length")
    if segment_length < 2 or u.size < 2 * segment_length:
        raise ValueError(
            f"need at least 2*segment_length={2 * segment_length} samples, got {u.size}"
        )
    if not 0.0 <= overlap_fraction < 1.0:
        raise ValueError("overlap_fraction must lie in [0, 1)")

    S_uu, S_yy, S_uy = segment_spectra(u, y, segment_length, overlap_fraction, window)
    freqs = np.fft.rfftfreq(segment_length, dt)[1:]
    S_uu, S_yy, S_uy = S_uu[1:], S_yy[1:], S_uy[1:]

    peak = S_uu.max() if S_uu.size else 0.0
    valid = S_uu > floor * peak if peak > 0 else np.zeros(S_uu.shape, dtype=bool)
    H = np.full(S_uy.shape, np.nan + 1j * np.nan)
    coh = np.full(S_uu.shape, np.nan)
    H[valid] = S_uy[valid] / S_uu[valid]
    denom = S_uu * S_yy
    ok = valid & (denom > 0)
    coh[ok] = np.abs(S_uy[ok]) ** 2 / denom[ok]
    coh[valid & ~(denom > 0)] = 0.0
    return FrfData(freqs, H, coh, valid)


def smooth(frf: FrfData, half_width_bins: int = 2) -> FrfData:
    """Centred moving average of the complex response over ``2*h+1`` bins.

    Windows are truncated at the ends of the grid and skip invalid bins.
    On a logarithmically spaced grid this is a constant-width window in
    log-frequency. ``half_width_bins == 0`` returns an unchanged copy.
    """
    h = int(half_width_bins)
    if h < 0:
        raise ValueError("half_width_bins must be >= 0")
    valid = frf.valid.copy()
    if h == 0:
        return FrfData(frf.freqs.copy(), frf.response.copy(),
                       None if frf.coherence is None else frf.coherence.copy(), valid)
    vals = np.where(valid, frf.response, 0.0)
    kernel = np.ones(2 * h + 1)
    total = np.convolve(vals, kernel, mode="same")
    count = np.convolve(valid.astype(float), kernel, mode="same")
    out = np.full(vals.shape, np.nan + 1j * np.nan)
    out[valid] = total[valid] / count[valid]
    return FrfData(frf.freqs.copy(), out,
                   None if frf.coherence is None else frf.coherence.copy(), valid)


def peak_frequency(frf: FrfData, f_lo: float = 0.0, f_hi: float = np.inf) -> float:
    """Frequency of the largest valid magnitude within ``[f_lo, f_hi]``."""
    band = frf.band(f_lo, f_hi).valid_only()
    if len(band) == 0:
        raise ValueError("no valid bins in band")
    return float(band.freqs[np.argmax(band.magnitude)])


def slope_db_per_decade(frf: FrfData, f_lo: float, f_hi: float) -> float:
    """Least-squares slope of the magnitude (dB) against log10 frequency."""
    band = frf.band(f_lo, f_hi).valid_only()
    if len(band) < 2:
        raise ValueError("need at least two valid bins for a slope")
    slope, _ = np.polyfit(np.log10(band.freqs), band.magnitude_db, 1)
    return float(slope)
