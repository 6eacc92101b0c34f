"""Shared oracles for the plant and acceptance tests."""

import numpy as np

from hydrocyl.plant import (
    FullState,
    ReducedState,
    full_derivative,
    full_jacobian,
    reduced_derivative,
    reduced_jacobian,
)

FULL_SCALES = np.array([1e-3, 1.0, 1e7, 1e7, 0.2, 1.0])
REDUCED_SCALES = np.array([1e7, 1.0, 0.2])


def random_full_point(rng, p):
    sign = rng.choice([-1.0, 1.0])
    nu = sign * rng.uniform(p.beta + 5e-5, p.alpha + p.beta - 5e-5)
    speed = rng.choice([-1.0, 1.0]) * rng.uniform(0.01, 0.5)
    return FullState(
        nu=nu,
        nu_dot=rng.uniform(-0.5, 0.5),
        PA=rng.uniform(0.1, 0.9) * p.PS,
        PB=rng.uniform(0.1, 0.9) * p.PS,
        x=rng.uniform(-0.15, 0.15),
        x_dot=speed,
    ), rng.uniform(-2e-3, 2e-3)


def random_reduced_point(rng, p):
    sign = rng.choice([-1.0, 1.0])
    u = sign * rng.uniform(p.beta + 5e-5, p.alpha + p.beta - 5e-5)
    speed = rng.choice([-1.0, 1.0]) * rng.uniform(0.01, 0.5)
    return ReducedState(PL=rng.uniform(-0.8, 0.8) * p.PS, x_dot=speed,
                        x=rng.uniform(-0.1, 0.1)), u


def central_difference_jacobian(f, s, u, scales, rel_step=1e-6):
    s = np.asarray(s, dtype=float)
    n = s.size
    J = np.zeros((n, n))
    for j in range(n):
        h = rel_step * scales[j]
        e = np.zeros(n)
        e[j] = h
        J[:, j] = (np.asarray(f(s + e, u)) - np.asarray(f(s - e, u))) / (2 * h)
    hu = rel_step * 1e-3
    B = (np.asarray(f(s, u + hu)) - np.asarray(f(s, u - hu))) / (2 * hu)
    return J, B


def scaled_column_error(J, J_ref, scales):
    """Largest column-wise relative error of the state-scaled Jacobians."""
    Js = J * scales[None, :] / scales[:, None]
    Jr = J_ref * scales[None, :] / scales[:, None]
    num = np.linalg.norm(Js - Jr, axis=0)
    den = np.linalg.norm(Jr, axis=0)
    return float(np.max(num / np.where(den > 0, den, 1.0)))


def jacobian_errors(p, n_points=100, seed=7):
    """Max scaled relative error of analytic vs central-difference Jacobians.

    Returns ``{"full": (state_err, input_err), "reduced": (...)}``.
    """
    rng = np.random.default_rng(seed)
    out = {}
    cases = [
        ("full", random_full_point, full_derivative, full_jacobian, FULL_SCALES, FullState),
        ("reduced", random_reduced_point, reduced_derivative, reduced_jacobian,
         REDUCED_SCALES, ReducedState),
    ]
    for name, draw, deriv, jac, scales, cls in cases:
        worst_J = worst_B = 0.0
        for _ in range(n_points):
            s, u = draw(rng, p)

            def f(state, command):
                return deriv(cls(*state), command, 0.0, p)

            J, B = jac(s, u, 0.0, p)
            Jfd, Bfd = central_difference_jacobian(f, s, u, scales)
            worst_J = max(worst_J, scaled_column_error(J, Jfd, scales))
            den = np.linalg.norm(Bfd / scales)
            if den > 0:
                worst_B = max(worst_B, np.linalg.norm((B - Bfd) / scales) / den)
        out[name] = (worst_J, worst_B)
    return out


def euler_convergence_order(p, model, dts=(1e-4, 5e-5, 2.5e-5, 1.25e-5), t_end=0.05):
    """Log-log fitted order of forward Euler against a fine RK4 reference.

    Smooth scenario: rod already moving at 0.1 m/s, constant opening in the
    linear band of the valve, so no branch point or velocity reversal is
    crossed.
    """
    from hydrocyl.sim import integrate

    if model == "reduced":
        x0, scales = (1e5, 0.1, 0.0), REDUCED_SCALES
    else:
        x0, scales = (8e-4, 0.0, 5.2e6, 4.8e6, 0.0, 0.1), FULL_SCALES
    u = 8e-4

    def final(dt, method):
        tr = integrate(model, p, u, t_end, dt, x0=x0, method=method)
        names = list(tr.data)[: len(x0)]
        return np.array([tr.data[n][-1] for n in names]) / scales

    ref = final(1e-6, "rk4")
    errs = [np.linalg.norm(final(dt, "euler") - ref) for dt in dts]
    order, _ = np.polyfit(np.log(dts), np.log(errs), 1)
    return float(order)
