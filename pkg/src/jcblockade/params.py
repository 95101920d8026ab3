"""Physical parameters of the driven, damped Jaynes-Cummings oscillator."""

import warnings
from dataclasses import dataclass

from .errors import RegimeWarning

#: Fock truncation used for all production runs (photon states 0..N_MAX_DEFAULT).
N_MAX_DEFAULT = 30


@dataclass(frozen=True)
class ModelParams:
    """Rates and drive settings, all in units of the cavity decay rate kappa.

    Conventions:
      * ``delta_omega`` is the drive-cavity detuning omega_d - omega_0.
      * Cavity loss enters the master equation as kappa*(2 a rho a^+ - ...),
        so the intracavity photon number decays at rate 2*kappa.
      * Dynamics are generated in the frame rotating at the drive frequency,
        which removes omega_0 and omega_d individually; only delta_omega
        survives.

    Attributes
    ----------
    g : float
        Atom-cavity dipole coupling rate.
    kappa : float
        Cavity field decay rate (use 1.0 to work in units of kappa).
    gamma : float
        Atomic spontaneous emission rate into non-cavity modes.
    eps_d : float
        Coherent drive amplitude.
    delta_omega : float
        Drive-cavity detuning omega_d - omega_0.
    n_max : int
        Fock-space photon-number cutoff (basis |0>..|n_max>).
    """

    g: float
    kappa: float
    gamma: float
    eps_d: float
    delta_omega: float
    n_max: int = N_MAX_DEFAULT

    def __post_init__(self):
        if self.kappa <= 0:
            raise ValueError("kappa must be positive")
        # g = 0 and eps_d = 0 are admitted for degenerate reference cases
        # (empty cavity, undriven vacuum) used by the validation suite.
        if self.g < 0 or self.eps_d < 0 or self.gamma < 0:
            raise ValueError("g, eps_d and gamma must be non-negative")
        if self.n_max < 3:
            raise ValueError("n_max must be at least 3")
        if self.g > 0:
            if self.g / self.kappa < 10.0:
                warnings.warn(
                    f"g/kappa = {self.g / self.kappa:.3g} is not deep in the "
                    "strong-coupling regime; couplet structure may be washed out",
                    RegimeWarning,
                    stacklevel=2,
                )
            if self.eps_d / self.g > 0.1:
                warnings.warn(
                    f"eps_d/g = {self.eps_d / self.g:.3g} exceeds 0.1; "
                    "second-order drive expansions become unreliable",
                    RegimeWarning,
                    stacklevel=2,
                )

    @property
    def dim(self) -> int:
        """Dimension of the composite (cavity x atom) Hilbert space."""
        return 2 * (self.n_max + 1)
