"""Physical parameter set of a valve-controlled hydraulic cylinder.

All quantities are SI. The defaults reproduce the reference parameter
table used throughout the package (10 MPa supply, 20 kg moving mass,
single-rod cylinder with 5e-3 / 4.7e-3 m^2 piston areas).

Note on the leakage coefficient ``CL``: it multiplies a pressure
difference inside the continuity equations, so dimensionally it is a
conductance in m^3/(s*Pa). It is sometimes quoted in 1/s instead; with
the default ``CL = 0`` both readings coincide.
"""

from __future__ import annotations

import dataclasses
import hashlib
import math
from dataclasses import dataclass
from functools import cached_property
from os import PathLike
from typing import Mapping

__all__ = [
    "PlantParameters",
    "DerivedConstants",
    "ParameterError",
    "validate",
    "derive",
    "load_config",
    "dump_config",
]


class ParameterError(ValueError):
    """Raised when a parameter set or config file is unusable."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


@dataclass(frozen=True)
class DerivedConstants:
    K: float
    Abar: float
    Vt: float
    omega_c: float
    zeta: float


@dataclass(frozen=True)
class PlantParameters:
    # valve
    alpha: float = 1e-3
    beta: float = 3e-4
    omega0: float = 1200.0
    xi: float = 0.7
    Cd: float = 0.65
    w: float = 0.02
    # hydraulics
    rho: float = 850.0
    E: float = 1e8
    PS: float = 1e7
    PT: float = 0.0
    CL: float = 0.0
    AA: float = 5e-3
    AB: float = 4.7e-3
    VA0: float = 1.2e-3
    VB0: float = 1.15e-3
    # mechanics
    m: float = 20.0
    Fc: float = 600.0
    Fs: float = 900.0
    sigma: float = 2000.0
    chi: float = 0.02
    delta: float = 0.8
    h_stroke: float = 0.2
    tanh_slope: float = 400.0

    def replace(self, **changes) -> "PlantParameters":
        return dataclasses.replace(self, **changes)

    @cached_property
    def derived(self) -> DerivedConstants:
        return derive(self)

    @property
    def K(self) -> float:
        return self.derived.K

    @property
    def Abar(self) -> float:
        return self.derived.Abar

    @property
    def Vt(self) -> float:
        return self.derived.Vt

    def as_dict(self) -> dict[str, float]:
        return {f.name: getattr(self, f.name) for f in dataclasses.fields(self)}

    def digest(self) -> str:
        """Short stable hash of the parameter values, for trajectory metadata."""
        text = ",".join(f"{k}={v!r}" for k, v in self.as_dict().items())
        return hashlib.sha1(text.encode()).hexdigest()[:12]

    @classmethod
    def from_mapping(cls, values: Mapping[str, float]) -> "PlantParameters":
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = sorted(set(values) - names)
        if unknown:
            raise ParameterError([f"unknown parameter {k!r}" for k in unknown])
        return cls(**{k: float(v) for k, v in values.items()})


# (description, predicate) pairs; the description is what validate() reports
_INVARIANTS = [
    ("alpha > 0", lambda p: p.alpha > 0),
    ("beta >= 0", lambda p: p.beta >= 0),
    ("omega0 > 0", lambda p: p.omega0 > 0),
    ("xi > 0", lambda p: p.xi > 0),
    ("Cd > 0", lambda p: p.Cd > 0),
    ("w > 0", lambda p: p.w > 0),
    ("rho > 0", lambda p: p.rho > 0),
    ("E > 0", lambda p: p.E > 0),
    ("PS > PT", lambda p: p.PS > p.PT),
    ("PT >= 0", lambda p: p.PT >= 0),
    ("CL >= 0", lambda p: p.CL >= 0),
    ("AA >= AB", lambda p: p.AA >= p.AB),
    ("AB > 0", lambda p: p.AB > 0),
    ("VA0 > 0", lambda p: p.VA0 > 0),
    ("VB0 > 0", lambda p: p.VB0 > 0),
    ("m > 0", lambda p: p.m > 0),
    ("Fc > 0", lambda p: p.Fc > 0),
    ("Fs >= Fc", lambda p: p.Fs >= p.Fc),
    ("sigma > 0", lambda p: p.sigma > 0),
    ("chi > 0", lambda p: p.chi > 0),
    ("delta != 0", lambda p: p.delta != 0),
    ("h_stroke > 0", lambda p: p.h_stroke > 0),
    ("tanh_slope > 0", lambda p: p.tanh_slope > 0),
]


def validate(p: PlantParameters) -> list[str]:
    """Return every violated invariant of ``p``; an empty list means valid.

    Non-finite values are reported per field before the range checks.
    """
    violations = [
        f"{name} is not finite"
        for name, value in p.as_dict().items()
        if not math.isfinite(value)
    ]
    if violations:
        return violations
    return [desc for desc, ok in _INVARIANTS if not ok(p)]


def derive(p: PlantParameters) -> DerivedConstants:
    """Valve gain, mean piston area, total volume, cylinder eigenfrequency and damping."""
    K = p.Cd * p.w * math.sqrt(2.0 / p.rho)
    Abar = 0.5 * (p.AA + p.AB)
    Vt = p.VA0 + p.VB0
    omega_c = 2.0 * Abar * math.sqrt(p.E / (Vt * p.m))
    zeta = p.sigma / (4.0 * Abar) * math.sqrt(Vt / (p.E * p.m))
    return DerivedConstants(K=K, Abar=Abar, Vt=Vt, omega_c=omega_c, zeta=zeta)


def load_config(path: str | PathLike, *, check: bool = True) -> PlantParameters:
    """Read a flat ``key = value`` parameter file.

    Lines starting with ``#`` and blank lines are ignored; keys not present
    keep their default. With ``check`` the loaded set is validated and a
    :class:`ParameterError` listing every violation is raised.
    """
    values: dict[str, float] = {}
    errors = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            if not sep:
                errors.append(f"line {lineno}: expected key=value, got {line!r}")
                continue
            try:
                values[key.strip()] = float(value.strip())
            except ValueError:
                errors.append(f"line {lineno}: {value.strip()!r} is not a number")
    if errors:
        raise ParameterError(errors)
    p = PlantParameters.from_mapping(values)
    if check:
        violations = validate(p)
        if violations:
            raise ParameterError(violations)
    return p


def dump_config(p: PlantParameters, path: str | PathLike) -> None:
    with open(path, "w") as fh:
        fh.write("# hydrocyl plant parameters (SI units)\n")
        for key, value in p.as_dict().items():
            fh.write(f"{key} = {value!r}\n")
