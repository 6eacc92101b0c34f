"""scikit-learn style wrappers.

``CylinderSimulator`` transforms a sampled spool command into the state
trajectory, ``H1Estimator`` fits an FRF to input/output records and
``LinearizedCylinder`` fits the operating-point transfer function. All
expose ``get_params``/``set_params`` and clone cleanly.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from . import frfest, linear
from ._validation import check_model, check_params, check_signal
from .sim import FULL_COLUMNS, REDUCED_COLUMNS, integrate

__all__ = ["CylinderSimulator", "H1Estimator", "LinearizedCylinder"]


class CylinderSimulator(TransformerMixin, BaseEstimator):
    """Fixed-step simulation of the full or reduced cylinder model.

    Parameters
    ----------
    model : {"reduced", "full"}
    params : PlantParameters, mapping or None
        Plant parameters; ``None`` uses the defaults.
    dt : float
        Sample spacing of the input passed to :meth:`transform`, seconds.
    bypass_deadzone : bool
        Replace the dead-zone/saturation by saturation only.
    method : {"euler", "rk4"}
    output : str or None
        If given, :meth:`transform` returns only this column.
    """

    def __init__(self, model="reduced", params=None, dt=1e-4, bypass_deadzone=False,
                 method="euler", output=None):
        self.model = model
        self.params = params
        self.dt = dt
        self.bypass_deadzone = bypass_deadzone
        self.method = method
        self.output = output

    def fit(self, X=None, y=None):
        """Validate the configuration; the plant has nothing to learn."""
        check_model(self.model)
        self.params_ = check_params(self.params)
        self.derived_ = self.params_.derived
        cols = FULL_COLUMNS if self.model == "full" else REDUCED_COLUMNS
        if self.output is not None and self.output not in cols:
            raise ValueError(f"output {self.output!r} not among {cols}")
        self.columns_ = list(cols)
        return self

    def transform(self, X):
        """Simulate from rest under the sampled command ``X``.

        Returns an ``(n_samples, n_columns)`` array ordered as
        ``columns_`` (or a 1-D array for a single ``output``).
        """
        check_is_fitted(self, "params_")
        u = check_signal(X)
        if u.size < 2:
            raise ValueError("need at least two input samples")
        traj = integrate(self.model, self.params_, u, (u.size - 1) * self.dt, self.dt,
                         bypass_deadzone=self.bypass_deadzone, method=self.method)
        self.trajectory_ = traj
        if self.output is not None:
            return traj[self.output]
        return np.column_stack([traj[c] for c in self.columns_])


class H1Estimator(BaseEstimator):
    """H1 frequency-response estimate from an input and an output record."""

    def __init__(self, dt=1e-4, segment_length=frfest.DEFAULT_SEGMENT, overlap=0.5,
                 window="hann", smoothing=2):
        self.dt = dt
        self.segment_length = segment_length
        self.overlap = overlap
        self.window = window
        self.smoothing = smoothing

    def fit(self, X, y):
        u = check_signal(X, "X")
        out = check_signal(y, "y")
        if u.shape != out.shape:
            raise ValueError("X and y must have the same number of samples")
        self.raw_frf_ = frfest.h1_estimate(u, out, self.dt, self.segment_length,
                                           self.overlap, self.window)
        self.frf_ = frfest.smooth(self.raw_frf_, self.smoothing)
        self.freqs_ = self.frf_.freqs
        self.coherence_ = self.frf_.coherence
        return self

    def predict(self, freqs):
        """Complex response at ``freqs`` (Hz), linearly interpolated over valid bins."""
        check_is_fitted(self, "frf_")
        f = np.asarray(freqs, dtype=float)
        good = self.frf_.valid_only()
        re = np.interp(f, good.freqs, good.response.real, left=np.nan, right=np.nan)
        im = np.interp(f, good.freqs, good.response.imag, left=np.nan, right=np.nan)
        return re + 1j * im


class LinearizedCylinder(BaseEstimator):
    """Operating-point linearization of the reduced model.

    With ``z_hat=None`` the pressure feedback is ignored and the plain
    flow-to-velocity response is used (unit flow gain).
    """

    def __init__(self, params=None, z_hat=None, pl_hat=0.0, mode="paper"):
        self.params = params
        self.z_hat = z_hat
        self.pl_hat = pl_hat
        self.mode = mode

    def fit(self, X=None, y=None):
        self.params_ = check_params(self.params)
        self.derived_ = self.params_.derived
        if self.z_hat is None:
            self.coefficients_ = None
            self.tf_ = linear.reduced_tf(self.params_)
        else:
            op = linear.OperatingPoint(float(self.z_hat), float(self.pl_hat))
            self.coefficients_ = linear.flow_coefficients(op, self.params_, self.mode)
            self.tf_ = linear.closed_linear_tf(op, self.params_, self.mode)
        self.critical_gain_ = linear.critical_gain(self.params_)
        return self

    def predict(self, freqs):
        check_is_fitted(self, "tf_")
        return linear.frf_eval(self.tf_, freqs).response
