"""Input checks shared by the estimator wrappers and the CLI."""

from __future__ import annotations

from typing import Mapping

import numpy as np
from sklearn.utils.validation import column_or_1d

from .params import ParameterError, PlantParameters, validate


def check_params(params) -> PlantParameters:
    """Coerce ``None`` / mapping / :class:`PlantParameters` and validate."""
    if params is None:
        p = PlantParameters()
    elif isinstance(params, PlantParameters):
        p = params
    elif isinstance(params, Mapping):
        p = PlantParameters.from_mapping(params)
    else:
        raise TypeError(f"params must be PlantParameters, a mapping or None, not {type(params).__name__}")
    violations = validate(p)
    if violations:
        raise ParameterError(violations)
    return p


def check_signal(X, name: str = "X") -> np.ndarray:
    """Return a finite 1-D float array from a vector or single-column matrix."""
    arr = np.asarray(X, dtype=float)
    if arr.ndim == 2 and arr.shape[1] == 1:
        arr = arr[:, 0]
    arr = column_or_1d(arr)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    return arr


def check_model(model: str) -> str:
    if model not in ("full", "reduced"):
        raise ValueError(f"model must be 'full' or 'reduced', got {model!r}")
    return model
