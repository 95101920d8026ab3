"""State diagnostics: partial trace, Fock statistics, Wigner distribution."""

import warnings

import numpy as np

from . import _kernels
from .errors import TruncationWarning
from .hilbert import composite_operators


def partial_trace_atom(rho: np.ndarray) -> np.ndarray:
    """Trace out the two-level atom from a composite density matrix."""
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or rho.shape[0] % 2:
        raise ValueError("expected a square matrix on the composite space")
    nf = rho.shape[0] // 2
    return rho.reshape(nf, 2, nf, 2).trace(axis1=1, axis2=3)


def fock_occupations(rho_field: np.ndarray) -> np.ndarray:
    """Photon-number probabilities P_n = <n|rho|n> of a field state."""
    return np.real(np.diag(np.asarray(rho_field)))


def fidelity_m(rho_field: np.ndarray, m: int) -> float:
    """Cumulative probability of at most m photons, F_m = sum_{n<=m} P_n.

    F_m close to 1 certifies an m-photon blockade; monotone in m and exactly
    1 at the truncation edge.
    """
    p = fock_occupations(rho_field)
    if not 0 <= m < p.size:
        raise ValueError(f"m must be in [0, {p.size - 1}]")
    return float(np.sum(p[: m + 1]))


def wigner(rho_field: np.ndarray, x_grid, y_grid) -> np.ndarray:
    """Wigner quasiprobability W(x + i y) of a field state.

    Evaluates the displaced-parity form W(alpha) =
    (2/pi) tr[rho D(alpha) Pi D(-alpha)] with exact displaced-parity matrix
    elements, so the only truncation error is the state's own.  Returns
    W[iy, ix] on the Cartesian grid; the grid integral should be 1 (a drift
    beyond 1e-2 signals truncation trouble and raises a warning).
    """
    rho_field = np.asarray(rho_field, dtype=complex)
    x = np.asarray(x_grid, dtype=float)
    y = np.asarray(y_grid, dtype=float)
    alpha = x[None, :] + 1j * y[:, None]
    W = _kernels.wigner_points(rho_field, alpha)
    norm = np.trapezoid(np.trapezoid(W, x, axis=1), y)
    if abs(norm - 1.0) > 1e-2:
        warnings.warn(
            f"Wigner grid integral {norm:.4f} deviates from 1 by more than "
            "1e-2; enlarge the grid or the Fock truncation",
            TruncationWarning,
            stacklevel=2,
        )
    return W


def wigner_normalization(W: np.ndarray, x_grid, y_grid) -> float:
    """Grid quadrature of a Wigner array (should be 1)."""
    return float(np.trapezoid(np.trapezoid(W, np.asarray(x_grid), axis=1),
                              np.asarray(y_grid)))


def atomic_inversion(rho: np.ndarray) -> float:
    """<sigma_z> of the composite state, in [-1, 1]."""
    rho = np.asarray(rho)
    n_max = rho.shape[0] // 2 - 1
    sz = composite_operators(n_max).sz
    return float(np.real(np.trace(rho @ sz)))
