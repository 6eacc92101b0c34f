"""Frequency-response container shared by the analytic and estimated FRFs."""

from __future__ import annotations

from dataclasses import dataclass
from os import PathLike

import numpy as np

__all__ = ["FrfData"]


@dataclass
class FrfData:
    """Complex response on a strictly increasing frequency grid (Hz).

    ``valid`` marks bins that carry a usable value; invalid bins hold NaN.
    """

    freqs: np.ndarray
    response: np.ndarray
    coherence: np.ndarray | None = None
    valid: np.ndarray | None = None

    def __post_init__(self):
        self.freqs = np.asarray(self.freqs, dtype=float)
        self.response = np.asarray(self.response, dtype=complex)
        if self.freqs.shape != self.response.shape:
            raise ValueError("freqs and response must have the same shape")
        if self.freqs.size > 1 and np.any(np.diff(self.freqs) <= 0):
            raise ValueError("frequencies must be strictly increasing")
        if self.valid is None:
            self.valid = np.isfinite(self.response)
        else:
            self.valid = np.asarray(self.valid, dtype=bool)

    def __len__(self) -> int:
        return self.freqs.size

    @property
    def magnitude(self) -> np.ndarray:
        return np.abs(self.response)

    @property
    def magnitude_db(self) -> np.ndarray:
        with np.errstate(divide="ignore"):
            return 20.0 * np.log10(np.abs(self.response))

    @property
    def phase_deg(self) -> np.ndarray:
        """Unwrapped phase in degrees (unwrapped across valid bins only)."""
        ph = np.full(self.freqs.shape, np.nan)
        ok = self.valid
        ph[ok] = np.degrees(np.unwrap(np.angle(self.response[ok])))
        return ph

    def band(self, f_lo: float, f_hi: float) -> "FrfData":
        sel = (self.freqs >= f_lo) & (self.freqs <= f_hi)
        return FrfData(
            self.freqs[sel],
            self.response[sel],
            None if self.coherence is None else self.coherence[sel],
            self.valid[sel],
        )

    def valid_only(self) -> "FrfData":
        ok = self.valid
        coh = None if self.coherence is None else self.coherence[ok]
        return FrfData(self.freqs[ok], self.response[ok], coh, None)

    def to_csv(self, path: str | PathLike) -> None:
        cols = [self.freqs, self.magnitude_db, self.phase_deg]
        names = ["f_hz", "mag_db", "phase_deg"]
        if self.coherence is not None:
            cols.append(self.coherence)
            names.append("coherence")
        np.savetxt(path, np.column_stack(cols), delimiter=",", fmt="%.9g",
                   header=",".join(names), comments="")

    @classmethod
    def read_csv(cls, path: str | PathLike) -> "FrfData":
        arr = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
        resp = 10.0 ** (arr[:, 1] / 20.0) * np.exp(1j * np.radians(arr[:, 2]))
        coh = arr[:, 3] if arr.shape[1] > 3 else None
        return cls(arr[:, 0], resp, coh)
