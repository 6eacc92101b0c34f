"""Linearized reduced-order dynamics and static valve characteristics.

``reduced_tf`` is the velocity response to load flow with zero leakage and
purely viscous friction. Around an orifice/load-pressure operating point
the load flow is linearized into a flow gain ``Cq`` and a flow-pressure
coefficient ``Cqp``; the latter closes a pressure feedback that reshapes
the second-order response (``closed_linear_tf``).

Two conventions are offered for the coefficients. ``"paper"`` (alias
``"paper_literal"``) uses
``Cq = K sqrt(PS - PL)``, ``Cqp = K z / (2 sqrt(PS - PL))``; ``"consistent"``
scales both by ``1/sqrt(2)``, which are the exact partial derivatives of the
aggregated load-flow law with its ``(PS - PL)/2`` radicand.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import brentq

from .frf import FrfData
from .params import PlantParameters
from .valve import load_flow

__all__ = [
    "TransferFunction",
    "OperatingPoint",
    "FlowCoefficients",
    "reduced_tf",
    "flow_coefficients",
    "linearized_load_flow",
    "closed_linear_tf",
    "frf_eval",
    "flow_pressure_curves",
    "characteristic_polynomial",
    "root_locus",
    "critical_gain",
    "crossing_gain",
    "default_gain_grid",
]

MODES = ("paper", "paper_literal", "consistent")


@dataclass(frozen=True)
class TransferFunction:
    """Rational function in ``s``; coefficients in ascending powers."""

    num: tuple[float, ...]
    den: tuple[float, ...]

    def __post_init__(self):
        num = tuple(float(c) for c in self.num)
        den = tuple(float(c) for c in self.den)
        if not den or all(c == 0 for c in den):
            raise ValueError("denominator must be nonzero")
        if _degree(num) > _degree(den):
            raise ValueError("transfer function must be proper")
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __call__(self, s):
        s = np.asarray(s, dtype=complex)
        return _polyval_asc(self.num, s) / _polyval_asc(self.den, s)

    def __mul__(self, k: float) -> "TransferFunction":
        return TransferFunction(tuple(k * c for c in self.num), self.den)

    __rmul__ = __mul__

    @property
    def dc_gain(self) -> float:
        return self.num[0] / self.den[0]

    def poles(self) -> np.ndarray:
        return np.roots(self.den[::-1][_leading_zeros(self.den[::-1]):])


def _degree(coeffs) -> int:
    nz = [i for i, c in enumerate(coeffs) if c != 0]
    return nz[-1] if nz else 0


def _leading_zeros(desc) -> int:
    i = 0
    while i < len(desc) - 1 and desc[i] == 0:
        i += 1
    return i


def _polyval_asc(coeffs, s):
    out = np.zeros_like(s)
    for c in reversed(coeffs):
        out = out * s + c
    return out


@dataclass(frozen=True)
class OperatingPoint:
    z_hat: float
    PL_hat: float


@dataclass(frozen=True)
class FlowCoefficients:
    Cq: float
    Cqp: float


def reduced_tf(p: PlantParameters) -> TransferFunction:
    d = p.derived
    wc, zeta = d.omega_c, d.zeta
    return TransferFunction((1.0 / d.Abar,), (1.0, 2.0 * zeta / wc, 1.0 / wc**2))


def flow_coefficients(op: OperatingPoint, p: PlantParameters, mode: str = "paper") -> FlowCoefficients:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if not op.PL_hat < p.PS:
        raise ValueError(f"operating load pressure {op.PL_hat} must be below PS={p.PS}")
    K = p.derived.K
    root = math.sqrt(p.PS - op.PL_hat)
    Cq = K * root
    Cqp = K * op.z_hat / (2.0 * root)
    if mode == "consistent":
        Cq /= math.sqrt(2.0)
        Cqp /= math.sqrt(2.0)
    return FlowCoefficients(Cq, Cqp)


def linearized_load_flow(coeffs: FlowCoefficients, z, PL):
    return coeffs.Cq * z - coeffs.Cqp * PL


def closed_linear_tf(op: OperatingPoint, p: PlantParameters, mode: str = "paper") -> TransferFunction:
    """Orifice-state to rod-velocity response with load-pressure feedback.

    ``Cq G / (1 + Cqp (m s + sigma) G / Abar)`` collapsed into one
    fraction with a second-order denominator.
    """
    c = flow_coefficients(op, p, mode)
    d = p.derived
    g = c.Cqp / d.Abar**2
    den = (1.0 + g * p.sigma, 2.0 * d.zeta / d.omega_c + g * p.m, 1.0 / d.omega_c**2)
    return TransferFunction((c.Cq / d.Abar,), den)


def frf_eval(tf: TransferFunction, freqs: Sequence[float]) -> FrfData:
    f = np.asarray(freqs, dtype=float)
    if np.any(f <= 0):
        raise ValueError("frequencies must be positive")
    return FrfData(f, tf(2j * np.pi * f))


def flow_pressure_curves(z_values, PL_grid, p: PlantParameters) -> np.ndarray:
    """Static load flow, one row per orifice state, one column per load pressure."""
    z_values = np.atleast_1d(np.asarray(z_values, dtype=float))
    PL_grid = np.atleast_1d(np.asarray(PL_grid, dtype=float))
    return np.array([[load_flow(z, PL, p) for PL in PL_grid.tolist()] for z in z_values.tolist()])


def characteristic_polynomial(p: PlantParameters, k: float) -> np.ndarray:
    """Descending coefficients of the closed loop of ``k G(s)/s`` with unity feedback."""
    d = p.derived
    return np.array([1.0 / d.omega_c**2, 2.0 * d.zeta / d.omega_c, 1.0, k / d.Abar])


def critical_gain(p: PlantParameters) -> float:
    """Routh-Hurwitz stability limit of the position loop."""
    d = p.derived
    return 2.0 * d.zeta * d.omega_c * d.Abar


def default_gain_grid(p: PlantParameters, n: int = 200, k_max: float | None = None) -> np.ndarray:
    kc = critical_gain(p)
    return np.geomspace(1e-3 * kc, 10.0 * kc if k_max is None else k_max, n)


def _match(prev: np.ndarray, cur: np.ndarray) -> np.ndarray:
    best = min(itertools.permutations(range(len(cur))),
               key=lambda perm: np.abs(cur[list(perm)] - prev).sum())
    return cur[list(best)]


def root_locus(p: PlantParameters, gains=None) -> np.ndarray:
    """Closed-loop poles for each gain, shape ``(len(gains), 3)``.

    Poles are companion-matrix eigenvalues; columns are kept continuous
    from one gain to the next by nearest matching.
    """
    gains = default_gain_grid(p) if gains is None else np.asarray(gains, dtype=float)
    if np.any(gains < 0):
        raise ValueError("gains must be non-negative")
    out = np.empty((gains.size, 3), dtype=complex)
    prev = None
    for i, k in enumerate(gains):
        r = np.roots(characteristic_polynomial(p, k))
        r = r[np.argsort(r.imag)] if prev is None else _match(prev, r)
        out[i] = prev = r
    return out


def _max_real(p: PlantParameters, k: float) -> float:
    return float(np.roots(characteristic_polynomial(p, k)).real.max())


def crossing_gain(p: PlantParameters, gains=None) -> float:
    """Gain at which the locus crosses into the right half plane.

    Found as a sign change of the largest pole real part along the sweep,
    refined by root bracketing between the two neighbouring grid gains.
    """
    gains = default_gain_grid(p) if gains is None else np.asarray(gains, dtype=float)
    re = np.array([_max_real(p, k) for k in gains])
    idx = np.nonzero((re[:-1] < 0) & (re[1:] >= 0))[0]
    if idx.size == 0:
        raise ValueError("no stability crossing inside the gain sweep")
    i = int(idx[0])
    return float(brentq(lambda k: _max_real(p, k), gains[i], gains[i + 1], xtol=1e-14, rtol=1e-12))
