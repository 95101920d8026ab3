"""Sampled time-domain and frequency-domain results."""

from dataclasses import dataclass

import numpy as np

#: kinds whose values approach 1 (not 0) at late times
G2_KINDS = ("atomic-g2", "field-g2")


@dataclass(frozen=True)
class CorrelationTrace:
    """Two-time correlation sampled on a tau grid (times in 1/kappa)."""

    tau_grid: np.ndarray
    values: np.ndarray
    kind: str

    def __post_init__(self):
        tau = np.asarray(self.tau_grid, dtype=float)
        if tau.ndim != 1 or tau.size < 2:
            raise ValueError("tau_grid must be a 1-d grid with >= 2 points")
        if tau[0] != 0.0 or np.any(np.diff(tau) <= 0):
            raise ValueError("tau_grid must start at 0 and strictly increase")
        if np.asarray(self.values).shape != tau.shape:
            raise ValueError("values and tau_grid must have matching shapes")
        object.__setattr__(self, "tau_grid", tau)
        object.__setattr__(self, "values", np.asarray(self.values))

    @property
    def baseline(self) -> float:
        """Late-time asymptote of this kind of correlation."""
        return 1.0 if self.kind in G2_KINDS else 0.0


@dataclass(frozen=True)
class SpectrumTrace:
    """Real spectral density sampled on an angular-frequency grid."""

    omega_grid: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        om = np.asarray(self.omega_grid, dtype=float)
        vals = np.asarray(self.values, dtype=float)
        if om.ndim != 1 or vals.shape != om.shape:
            raise ValueError("omega_grid and values must be matching 1-d arrays")
        # numerical floor, relative to the spectral scale
        floor = 1e-8 * max(1.0, float(np.max(np.abs(vals))) if vals.size else 1.0)
        if vals.size and vals.min() < -floor:
            raise ValueError(f"spectral values below numerical floor: {vals.min():.3e}")
        object.__setattr__(self, "omega_grid", om)
        object.__setattr__(self, "values", vals)
