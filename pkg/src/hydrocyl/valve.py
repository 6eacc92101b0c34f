"""Directional control valve: spool loop, orifice nonlinearity and flows.

The spool position ``nu`` follows the commanded position ``u`` through a
second-order closed loop with unity DC gain. The flow-governing orifice
state ``z`` is ``nu`` passed through a dead-zone (half width ``beta``) and
a saturation at ``alpha``. Negative square-root radicands, which appear
during fast transients, are clamped to zero so the flow stalls.

All functions here take and return Python floats; they sit in the inner
loop of the integrators.
"""

from __future__ import annotations

import math
from typing import NamedTuple

from .params import PlantParameters

__all__ = [
    "SpoolState",
    "spool_derivative",
    "orifice_state",
    "orifice_state_slope",
    "saturate",
    "port_flows",
    "load_flow",
    "chamber_pressures",
]


class SpoolState(NamedTuple):
    nu: float
    nu_dot: float


def spool_derivative(s, u: float, p: PlantParameters) -> SpoolState:
    nu, nu_dot = s
    w2 = p.omega0 * p.omega0
    return SpoolState(nu_dot, w2 * u - 2.0 * p.xi * p.omega0 * nu_dot - w2 * nu)


def orifice_state(nu: float, p: PlantParameters) -> float:
    """Dead-zone followed by saturation, odd in ``nu`` and bounded by ``alpha``."""
    a = abs(nu)
    if a >= p.alpha + p.beta:
        return math.copysign(p.alpha, nu)
    if a < p.beta:
        return 0.0
    return nu - math.copysign(p.beta, nu)


def orifice_state_slope(nu: float, p: PlantParameters) -> float:
    """dz/dnu away from the branch boundaries (1 in the linear band, else 0)."""
    a = abs(nu)
    return 1.0 if p.beta <= a < p.alpha + p.beta else 0.0


def saturate(v: float, limit: float) -> float:
    return max(-limit, min(limit, v))


def port_flows(z: float, PA: float, PB: float, p: PlantParameters) -> tuple[float, float]:
    """Volumetric flows into chambers A and B for orifice state ``z``.

    For ``z > 0`` chamber A is fed from supply and B drains to tank; for
    ``z < 0`` the roles swap. ``z == 0`` gives no flow.
    """
    K = p.derived.K
    if z > 0:
        QA = z * K * math.sqrt(max(0.0, p.PS - PA))
        QB = -z * K * math.sqrt(max(0.0, PB - p.PT))
    elif z < 0:
        QA = z * K * math.sqrt(max(0.0, PA - p.PT))
        QB = -z * K * math.sqrt(max(0.0, p.PS - PB))
    else:
        QA = QB = 0.0
    return QA, QB


def load_flow(z: float, PL: float, p: PlantParameters) -> float:
    """Aggregated load flow of the reduced model (tank pressure taken as zero)."""
    if z == 0:
        return 0.0
    return z * p.derived.K * math.sqrt(max(0.0, 0.5 * (p.PS - (PL if z > 0 else -PL))))


def chamber_pressures(PL: float, p: PlantParameters) -> tuple[float, float]:
    return 0.5 * (p.PS + PL), 0.5 * (p.PS - PL)
