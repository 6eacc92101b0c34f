"""Input signals, fixed-step integration and trajectory records."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from os import PathLike

import numpy as np

from .params import PlantParameters
from .plant import FullState, ReducedState, _full_rhs, _reduced_rhs

__all__ = [
    "InputSignal",
    "parse_input_spec",
    "sample",
    "Trajectory",
    "SimulationError",
    "integrate",
    "n_records",
    "FULL_COLUMNS",
    "REDUCED_COLUMNS",
]

FULL_COLUMNS = ("nu", "nu_dot", "PA", "PB", "x", "x_dot", "z", "QA", "QB")
REDUCED_COLUMNS = ("PL", "x_dot", "x", "z", "QL")
_KINDS = ("constant", "step", "sine", "down_chirp")


@dataclass(frozen=True)
class InputSignal:
    """Spool command in metres.

    ``down_chirp`` sweeps its instantaneous frequency linearly from
    ``f_start`` to ``f_end`` over ``duration`` seconds and holds ``f_end``
    afterwards (phase stays continuous).
    """

    kind: str = "constant"
    amplitude: float = 0.0
    frequency: float = 1.0
    f_start: float = 600.0
    f_end: float = 1.0
    duration: float = 120.0
    step_time: float = 0.0

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown input kind {self.kind!r}; expected one of {_KINDS}")
        if not math.isfinite(self.amplitude):
            raise ValueError("amplitude must be finite")
        if self.kind == "sine" and not self.frequency > 0:
            raise ValueError("sine frequency must be > 0")
        if self.kind == "down_chirp":
            if not self.f_start > self.f_end > 0:
                raise ValueError("down_chirp needs f_start > f_end > 0")
            if not self.duration > 0:
                raise ValueError("down_chirp duration must be > 0")

    def __call__(self, t):
        return sample(self, t)

    def instantaneous_frequency(self, t):
        """Instantaneous frequency in Hz (chirp and sine only)."""
        t = np.asarray(t, dtype=float)
        if self.kind == "sine":
            return np.full_like(t, self.frequency)
        if self.kind != "down_chirp":
            raise ValueError(f"{self.kind} input has no frequency")
        T = self.duration
        tc = np.minimum(t, T)
        return self.f_start + (self.f_end - self.f_start) * tc / T

    def describe(self) -> str:
        if self.kind == "constant":
            return f"const:{self.amplitude:g}"
        if self.kind == "step":
            return f"step:{self.amplitude:g}:{self.step_time:g}"
        if self.kind == "sine":
            return f"sine:{self.amplitude:g}:{self.frequency:g}"
        return f"chirp:{self.amplitude:g}:{self.f_start:g}:{self.f_end:g}:{self.duration:g}"


def parse_input_spec(spec: str, duration: float | None = None) -> InputSignal:
    """Parse ``const:A | step:A[:T] | sine:A:F | chirp:A:F0:F1[:T]``.

    A chirp without its own duration takes ``duration`` (the simulation
    length) when given.
    """
    kind, *fields = spec.strip().split(":")
    try:
        values = [float(v) for v in fields]
    except ValueError:
        raise ValueError(f"non-numeric field in input spec {spec!r}") from None
    arity = {"const": (1, 1), "step": (1, 2), "sine": (2, 2), "chirp": (3, 4)}
    if kind not in arity:
        raise ValueError(f"unknown input kind {kind!r} in {spec!r}")
    lo, hi = arity[kind]
    if not lo <= len(values) <= hi:
        raise ValueError(f"{kind} expects {lo}..{hi} numeric fields, got {len(values)}")
    if kind == "const":
        return InputSignal("constant", values[0])
    if kind == "step":
        return InputSignal("step", values[0], step_time=values[1] if len(values) > 1 else 0.0)
    if kind == "sine":
        return InputSignal("sine", values[0], frequency=values[1])
    T = values[3] if len(values) > 3 else (duration if duration is not None else 120.0)
    return InputSignal("down_chirp", values[0], f_start=values[1], f_end=values[2], duration=T)


def sample(sig: InputSignal, t):
    """Evaluate the signal at time(s) ``t`` (scalar or array, seconds)."""
    t_arr = np.asarray(t, dtype=float)
    a = sig.amplitude
    if sig.kind == "constant":
        out = np.full_like(t_arr, a)
    elif sig.kind == "step":
        out = np.where(t_arr >= sig.step_time, a, 0.0)
    elif sig.kind == "sine":
        out = a * np.sin(2.0 * np.pi * sig.frequency * t_arr)
    else:
        T, f0, f1 = sig.duration, sig.f_start, sig.f_end
        tc = np.minimum(t_arr, T)
        cycles = f0 * tc + (f1 - f0) / (2.0 * T) * tc * tc
        cycles = cycles + f1 * np.maximum(t_arr - T, 0.0)
        out = a * np.sin(2.0 * np.pi * cycles)
    return float(out) if out.ndim == 0 else out


@dataclass
class Trajectory:
    """Uniformly sampled simulation record.

    ``data`` maps column name to a 1-D array aligned with ``t``; the input
    command is stored under ``u``.
    """

    t: np.ndarray
    data: dict[str, np.ndarray]
    meta: dict[str, str] = field(default_factory=dict)

    @property
    def dt(self) -> float:
        return float(self.t[1] - self.t[0]) if len(self.t) > 1 else float("nan")

    @property
    def model(self) -> str:
        if "model" in self.meta:
            return self.meta["model"]
        return "full" if "PA" in self.data else "reduced"

    @property
    def columns(self) -> list[str]:
        return ["t", *self.data]

    def __getitem__(self, name: str) -> np.ndarray:
        if name == "t":
            return self.t
        return self.data[name]

    def __len__(self) -> int:
        return len(self.t)

    @property
    def load_pressure(self) -> np.ndarray:
        if "PL" in self.data:
            return self.data["PL"]
        return self.data["PA"] - self.data["PB"]

    def as_array(self) -> np.ndarray:
        return np.column_stack([self.t, *self.data.values()])

    def to_csv(self, path: str | PathLike) -> None:
        np.savetxt(
            path,
            self.as_array(),
            delimiter=",",
            fmt="%.9g",
            header=",".join(self.columns),
            comments="",
        )

    @classmethod
    def read_csv(cls, path: str | PathLike) -> "Trajectory":
        with open(path, newline="") as fh:
            header = next(csv.reader(fh))
        arr = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
        if header[0] != "t":
            raise ValueError(f"{path}: first column must be 't', got {header[0]!r}")
        data = {name: arr[:, i] for i, name in enumerate(header) if i > 0}
        return cls(t=arr[:, 0], data=data)


class SimulationError(RuntimeError):
    """Integration produced a non-finite state."""

    def __init__(self, step: int, t: float, component: str, state):
        self.step, self.t, self.component = step, t, component
        super().__init__(
            f"non-finite state at step {step} (t={t:.6g} s): component {component!r}; "
            f"state={tuple(state)}"
        )


def n_records(t_end: float, dt: float) -> int:
    """floor(t_end/dt) + 1, tolerant to the ratio landing just below an integer."""
    ratio = t_end / dt
    k = round(ratio)
    return (k if abs(ratio - k) < 1e-9 * max(1.0, ratio) else math.floor(ratio)) + 1


def _load_samples(load, t: np.ndarray) -> np.ndarray:
    if load is None:
        return np.zeros_like(t)
    if callable(load):
        try:
            out = np.asarray(load(t), dtype=float)
            if out.shape == t.shape:
                return out
        except (TypeError, ValueError):
            pass
        return np.array([float(load(tk)) for tk in t])
    return np.full_like(t, float(load))


def integrate(
    model: str,
    p: PlantParameters,
    sig,
    t_end: float,
    dt: float = 1e-4,
    *,
    load=None,
    bypass_deadzone: bool = False,
    smooth_friction: bool = True,
    method: str = "euler",
    x0=None,
) -> Trajectory:
    """Integrate the ``"full"`` or ``"reduced"`` model with a fixed step.

    ``sig`` is an :class:`InputSignal`, any function of time, a constant,
    or an array of ``floor(t_end/dt)+1`` samples. ``method="euler"`` is explicit forward Euler with the input and load
    sampled at the start of each step; ``"rk4"`` is the classical
    fourth-order scheme with the input held over the step. ``load`` is the
    external force: ``None`` (zero), a constant, or a function of time.
    ``x0`` overrides the all-zero initial state.

    Raises :class:`SimulationError` on a non-finite state.
    """
    if model not in ("full", "reduced"):
        raise ValueError(f"model must be 'full' or 'reduced', got {model!r}")
    if method not in ("euler", "rk4"):
        raise ValueError(f"method must be 'euler' or 'rk4', got {method!r}")
    if not dt > 0 or not t_end >= dt:
        raise ValueError("need dt > 0 and t_end >= dt")

    n = n_records(t_end, dt)
    t = np.arange(n) * dt
    if callable(sig):
        u = np.asarray(sig(t), dtype=float)
        if u.shape != t.shape:
            u = np.full(n, float(u))
    elif np.ndim(sig) == 0:
        u = np.full(n, float(sig))
    else:
        u = np.asarray(sig, dtype=float)
        if u.shape != t.shape:
            raise ValueError(f"sampled input has {u.size} values, expected {n}")
    FL = _load_samples(load, t)

    if model == "full":
        rhs, state_type, aux_names = _full_rhs, FullState, ("z", "QA", "QB")
    else:
        rhs, state_type, aux_names = _reduced_rhs, ReducedState, ("z", "QL")
    s = tuple(float(v) for v in (x0 if x0 is not None else state_type()))
    if len(s) != len(state_type._fields):
        raise ValueError(f"x0 must have {len(state_type._fields)} components")

    states = [None] * n
    auxes = [None] * n
    u_list, FL_list = u.tolist(), FL.tolist()
    h = dt
    for k in range(n - 1):
        states[k] = s
        uk, fk = u_list[k], FL_list[k]
        d, auxes[k] = rhs(s, uk, fk, p, bypass_deadzone, smooth_friction)
        if method == "euler":
            s = tuple([si + h * di for si, di in zip(s, d)])
        else:
            k2, _ = rhs([si + 0.5 * h * di for si, di in zip(s, d)], uk, fk, p,
                        bypass_deadzone, smooth_friction)
            k3, _ = rhs([si + 0.5 * h * di for si, di in zip(s, k2)], uk, fk, p,
                        bypass_deadzone, smooth_friction)
            k4, _ = rhs([si + h * di for si, di in zip(s, k3)], uk, fk, p,
                        bypass_deadzone, smooth_friction)
            s = tuple([si + h / 6.0 * (a + 2.0 * b + 2.0 * c + e)
                       for si, a, b, c, e in zip(s, d, k2, k3, k4)])
        if not math.isfinite(sum(s)):
            bad = next(
                (name for name, v in zip(state_type._fields, s) if not math.isfinite(v)),
                state_type._fields[0],
            )
            raise SimulationError(k + 1, (k + 1) * dt, bad, s)
    states[n - 1] = s
    _, auxes[n - 1] = rhs(s, u_list[-1], FL_list[-1], p, bypass_deadzone, smooth_friction)

    st = np.array(states)
    ax = np.array(auxes)
    data = {name: st[:, i] for i, name in enumerate(state_type._fields)}
    data.update({name: ax[:, i] for i, name in enumerate(aux_names)})
    data["u"] = u
    meta = {
        "model": model,
        "params": p.digest(),
        "input": sig.describe() if isinstance(sig, InputSignal) else repr(sig),
        "method": method,
        "bypass_deadzone": str(bypass_deadzone),
    }
    return Trajectory(t=t, data=data, meta=meta)
