"""State equations of the full-order and reduced-order cylinder models.

Full model state: spool position and velocity, both chamber pressures,
rod position and velocity. The rod position is an explicit integrator
because the chamber volumes depend on it (through the stroke-saturated
position), so six states are carried.

Reduced model state: load pressure ``PL = PA - PB`` and rod velocity,
plus the rod position as a pure output integrator. The spool loop is
dropped and the input ``u_star`` is taken as the spool position.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .params import PlantParameters
from .valve import load_flow, orifice_state, orifice_state_slope, port_flows, saturate

__all__ = [
    "FullState",
    "ReducedState",
    "friction",
    "friction_slope",
    "chamber_volumes",
    "full_derivative",
    "reduced_derivative",
    "full_jacobian",
    "reduced_jacobian",
]


class FullState(NamedTuple):
    nu: float = 0.0
    nu_dot: float = 0.0
    PA: float = 0.0
    PB: float = 0.0
    x: float = 0.0
    x_dot: float = 0.0


class ReducedState(NamedTuple):
    PL: float = 0.0
    x_dot: float = 0.0
    x: float = 0.0


def friction(x_dot: float, p: PlantParameters, smooth: bool = True) -> float:
    """Stribeck friction force opposing the rod velocity.

    With ``smooth`` the sign of the velocity is replaced by
    ``tanh(p.tanh_slope * x_dot)``; otherwise the discontinuous sign is used
    (zero at standstill).
    """
    if smooth:
        direction = math.tanh(p.tanh_slope * x_dot)
    else:
        direction = 1.0 if x_dot > 0 else (-1.0 if x_dot < 0 else 0.0)
    if direction == 0:
        return p.sigma * x_dot
    stribeck = math.exp(-((abs(x_dot) / p.chi) ** p.delta))
    return direction * (p.Fc + (p.Fs - p.Fc) * stribeck) + p.sigma * x_dot


def friction_slope(x_dot: float, p: PlantParameters, smooth: bool = True) -> float:
    """df/dx_dot. At ``x_dot == 0`` the Stribeck term's singular slope is
    multiplied by a vanishing direction factor and dropped."""
    slope = p.sigma
    a = abs(x_dot)
    if smooth:
        t = math.tanh(p.tanh_slope * x_dot)
        shape = math.exp(-((a / p.chi) ** p.delta)) if a > 0 else 1.0
        slope += p.tanh_slope * (1.0 - t * t) * (p.Fc + (p.Fs - p.Fc) * shape)
    else:
        t = 1.0 if x_dot > 0 else (-1.0 if x_dot < 0 else 0.0)
    if a > 0:
        r = a / p.chi
        dshape = -p.delta * r ** (p.delta - 1.0) / p.chi * math.exp(-(r**p.delta))
        slope += t * (p.Fs - p.Fc) * dshape * (1.0 if x_dot > 0 else -1.0)
    return slope


def chamber_volumes(x: float, p: PlantParameters) -> tuple[float, float]:
    xs = saturate(x, p.h_stroke)
    return p.VA0 + p.AA * xs, p.VB0 - p.AB * xs


def _orifice(nu: float, p: PlantParameters, bypass_deadzone: bool) -> float:
    return saturate(nu, p.alpha) if bypass_deadzone else orifice_state(nu, p)


def _orifice_slope(nu: float, p: PlantParameters, bypass_deadzone: bool) -> float:
    if bypass_deadzone:
        return 1.0 if abs(nu) < p.alpha else 0.0
    return orifice_state_slope(nu, p)


def _full_rhs(s, u, FL, p, bypass_deadzone=False, smooth_friction=True):
    """Derivative tuple plus the signals (z, QA, QB) seen at this state."""
    nu, nu_dot, PA, PB, x, x_dot = s
    w0 = p.omega0
    z = _orifice(nu, p, bypass_deadzone)
    QA, QB = port_flows(z, PA, PB, p)
    VA, VB = chamber_volumes(x, p)
    leak = p.CL * (PA - PB)
    dPA = p.E / VA * (QA - p.AA * x_dot - leak)
    dPB = p.E / VB * (QB + p.AB * x_dot + leak)
    acc = (PA * p.AA - PB * p.AB - friction(x_dot, p, smooth_friction) - FL) / p.m
    dnu_dot = w0 * w0 * (u - nu) - 2.0 * p.xi * w0 * nu_dot
    return (nu_dot, dnu_dot, dPA, dPB, x_dot, acc), (z, QA, QB)


def _reduced_rhs(s, u_star, FL, p, bypass_deadzone=False, smooth_friction=True):
    PL, x_dot, _x = s
    z = _orifice(u_star, p, bypass_deadzone)
    QL = load_flow(z, PL, p)
    d = p.derived
    dPL = 4.0 * p.E / d.Vt * (QL - d.Abar * x_dot - p.CL * PL)
    acc = (PL * d.Abar - friction(x_dot, p, smooth_friction) - FL) / p.m
    return (dPL, acc, x_dot), (z, QL)


def full_derivative(
    s: FullState,
    u: float,
    FL: float,
    p: PlantParameters,
    *,
    bypass_deadzone: bool = False,
    smooth_friction: bool = True,
) -> FullState:
    """Time derivative of the full-order state for spool command ``u`` and load ``FL``."""
    deriv, _ = _full_rhs(s, u, FL, p, bypass_deadzone, smooth_friction)
    return FullState(*deriv)


def reduced_derivative(
    s: ReducedState,
    u_star: float,
    FL: float,
    p: PlantParameters,
    *,
    bypass_deadzone: bool = False,
    smooth_friction: bool = True,
) -> ReducedState:
    """Time derivative of the reduced state; ``u_star`` plays the spool position."""
    deriv, _ = _reduced_rhs(s, u_star, FL, p, bypass_deadzone, smooth_friction)
    return ReducedState(*deriv)


def _orifice_partials(z, PA, PB, p):
    """Partials (dQA/dz, dQA/dPA, dQB/dz, dQB/dPB). Clamped radicands give zero slope."""
    K = p.derived.K

    def root(r):
        return math.sqrt(r) if r > 0 else 0.0

    def inv_root(r):
        return 0.5 / math.sqrt(r) if r > 0 else 0.0

    if z > 0:
        ra, rb = p.PS - PA, PB - p.PT
        return K * root(ra), -z * K * inv_root(ra), -K * root(rb), -z * K * inv_root(rb)
    if z < 0:
        ra, rb = PA - p.PT, p.PS - PB
        return K * root(ra), z * K * inv_root(ra), -K * root(rb), z * K * inv_root(rb)
    # z == 0: flows vanish identically in pressure; use the opening-side slope in z
    return K * root(p.PS - PA), 0.0, -K * root(PB - p.PT), 0.0


def full_jacobian(
    s: FullState,
    u: float,
    FL: float,
    p: PlantParameters,
    *,
    bypass_deadzone: bool = False,
    smooth_friction: bool = True,
) -> tuple[np.ndarray, np.ndarray]:
    """Analytic state Jacobian (6x6) and input column (6,) of :func:`full_derivative`.

    Exact wherever the right-hand side is differentiable, i.e. away from
    the orifice branch points, zero radicands, the stroke ends and
    ``x_dot == 0``.
    """
    nu, nu_dot, PA, PB, x, x_dot = s
    E, AA, AB, CL = p.E, p.AA, p.AB, p.CL
    w0 = p.omega0
    z = _orifice(nu, p, bypass_deadzone)
    dz = _orifice_slope(nu, p, bypass_deadzone)
    QA, QB = port_flows(z, PA, PB, p)
    dQA_dz, dQA_dPA, dQB_dz, dQB_dPB = _orifice_partials(z, PA, PB, p)
    VA, VB = chamber_volumes(x, p)
    inside = 1.0 if abs(x) < p.h_stroke else 0.0
    RA = QA - AA * x_dot - CL * (PA - PB)
    RB = QB + AB * x_dot - CL * (PB - PA)

    J = np.zeros((6, 6))
    J[0, 1] = 1.0
    J[1, 0] = -w0 * w0
    J[1, 1] = -2.0 * p.xi * w0
    J[2, 0] = E / VA * dQA_dz * dz
    J[2, 2] = E / VA * (dQA_dPA - CL)
    J[2, 3] = E / VA * CL
    J[2, 4] = -E * RA / VA**2 * AA * inside
    J[2, 5] = -E * AA / VA
    J[3, 0] = E / VB * dQB_dz * dz
    J[3, 2] = E / VB * CL
    J[3, 3] = E / VB * (dQB_dPB - CL)
    J[3, 4] = E * RB / VB**2 * AB * inside
    J[3, 5] = E * AB / VB
    J[4, 5] = 1.0
    J[5, 2] = AA / p.m
    J[5, 3] = -AB / p.m
    J[5, 5] = -friction_slope(x_dot, p, smooth_friction) / p.m

    B = np.zeros(6)
    B[1] = w0 * w0
    return J, B


def reduced_jacobian(
    s: ReducedState,
    u_star: float,
    FL: float,
    p: PlantParameters,
    *,
    bypass_deadzone: bool = False,
    smooth_friction: bool = True,
) -> tuple[np.ndarray, np.ndarray]:
    """Analytic state Jacobian (3x3) and input column (3,) of :func:`reduced_derivative`."""
    PL, x_dot, _x = s
    d = p.derived
    c = 4.0 * p.E / d.Vt
    z = _orifice(u_star, p, bypass_deadzone)
    dz = _orifice_slope(u_star, p, bypass_deadzone)
    sgn = 1.0 if z > 0 else (-1.0 if z < 0 else 0.0)
    r = 0.5 * (p.PS - sgn * PL)
    if z != 0 and r > 0:
        dQL_dz = d.K * math.sqrt(r)
        dQL_dPL = -abs(z) * d.K / (4.0 * math.sqrt(r))
    elif z == 0:
        dQL_dz = d.K * math.sqrt(max(0.0, 0.5 * p.PS - 0.5 * abs(PL)))
        dQL_dPL = 0.0
    else:
        dQL_dz = dQL_dPL = 0.0

    J = np.zeros((3, 3))
    J[0, 0] = c * (dQL_dPL - p.CL)
    J[0, 1] = -c * d.Abar
    J[1, 0] = d.Abar / p.m
    J[1, 1] = -friction_slope(x_dot, p, smooth_friction) / p.m
    J[2, 1] = 1.0

    B = np.zeros(3)
    B[0] = c * dQL_dz * dz
    return J, B
