"""Full- and reduced-order models of valve-controlled hydraulic cylinders."""

from .estimators import CylinderSimulator, H1Estimator, LinearizedCylinder
from .frf import FrfData
from .params import DerivedConstants, ParameterError, PlantParameters, derive, load_config, validate
from .plant import FullState, ReducedState
from .sim import InputSignal, SimulationError, Trajectory, integrate

__version__ = "0.1.0"

__all__ = [
    "CylinderSimulator",
    "H1Estimator",
    "LinearizedCylinder",
    "FrfData",
    "DerivedConstants",
    "ParameterError",
    "PlantParameters",
    "derive",
    "load_config",
    "validate",
    "FullState",
    "ReducedState",
    "InputSignal",
    "SimulationError",
    "Trajectory",
    "integrate",
]
