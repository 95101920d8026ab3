"""Steady-state solution of L rho_ss = 0 with tr rho_ss = 1."""

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import AmbiguousSteadyStateError, SteadyStateSolverError
from .liouvillian import Superoperator, unvec, vec


def _trace_vector(dim: int) -> np.ndarray:
    t = np.zeros(dim * dim, dtype=complex)
    t[np.arange(dim) * (dim + 1)] = 1.0
    return t


def _solve_direct(L: Superoperator) -> np.ndarray:
    # replace the first row of the vectorized system with the trace constraint
    dim = L.dim
    A = L.matrix.tocoo()
    keep = A.row != 0
    rows = np.concatenate([A.row[keep], np.zeros(dim, dtype=A.row.dtype)])
    cols = np.concatenate([A.col[keep],
                           (np.arange(dim) * (dim + 1)).astype(A.col.dtype)])
    vals = np.concatenate([A.data[keep], np.ones(dim, dtype=complex)])
    M = sp.csc_matrix((vals, (rows, cols)), shape=A.shape)
    b = np.zeros(dim * dim, dtype=complex)
    b[0] = 1.0
    try:
        x = spla.splu(M).solve(b)
    except RuntimeError as exc:  # singular factorization
        raise SteadyStateSolverError(f"sparse LU failed: {exc}") from exc
    return x


def _solve_eigen(L: Superoperator, check_unique: bool) -> np.ndarray:
    k = 2 if check_unique else 1
    kappa = L.params.kappa if L.params is not None else 1.0
    vals, vecs = spla.eigs(L.matrix, k=k, sigma=1e-10 * kappa, which="LM")
    order = np.argsort(np.abs(vals))
    vals, vecs = vals[order], vecs[:, order]
    if check_unique and abs(vals[1]) < 1e-8 * kappa:
        raise AmbiguousSteadyStateError(
            f"two Liouvillian eigenvalues below threshold: {vals[0]:.3e}, {vals[1]:.3e}"
        )
    return vecs[:, 0]


def steady_state(L: Superoperator, method: str = "direct",
                 check_unique: bool = False) -> np.ndarray:
    """Unique steady-state density matrix of a trace-preserving generator.

    Parameters
    ----------
    L : Superoperator
        Master-equation generator (must be trace preserving).
    method : {"direct", "eigen"}
        "direct" replaces one row of the vectorized linear system by the
        trace constraint and solves with sparse LU (deterministic, fast).
        "eigen" takes the smallest-magnitude eigenvector (shift-invert
        Arnoldi) and normalizes; used as an independent cross-check.
    check_unique : bool
        With the eigen method, also verify the kernel is one-dimensional and
        raise :class:`AmbiguousSteadyStateError` otherwise.

    Returns
    -------
    ndarray
        Hermitian, unit-trace, positive-semidefinite rho_ss with
        ||L vec(rho_ss)||_inf below 1e-10 times the generator scale.
    """
    if method == "direct":
        if check_unique:
            _solve_eigen(L, check_unique=True)
        x = _solve_direct(L)
    elif method == "eigen":
        x = _solve_eigen(L, check_unique)
    else:
        raise ValueError(f"unknown method {method!r}")

    rho = unvec(x, L.dim)
    rho = 0.5 * (rho + rho.conj().T)  # strip 1e-13-level solver asymmetry
    tr = np.trace(rho).real
    if abs(tr) < 1e-14:
        raise SteadyStateSolverError("kernel vector has vanishing trace")
    rho /= tr

    scale = np.abs(L.matrix.data).max() if L.matrix.nnz else 1.0
    kappa = L.params.kappa if L.params is not None else 1.0
    residual = np.max(np.abs(L.matrix @ vec(rho)))
    if residual > 1e-10 * kappa * scale:
        raise SteadyStateSolverError(
            f"steady-state residual {residual:.3e} exceeds tolerance "
            f"{1e-10 * kappa * scale:.3e}"
        )
    return rho


def expectation(rho: np.ndarray, O: np.ndarray) -> complex:
    """tr(rho O)."""
    rho = np.asarray(rho)
    O = np.asarray(O)
    if rho.shape != O.shape:
        raise ValueError(f"dimension mismatch: {rho.shape} vs {O.shape}")
    return complex(np.trace(rho @ O))
