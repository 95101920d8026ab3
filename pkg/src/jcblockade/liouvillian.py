"""Master-equation generator as a sparse superoperator.

Vectorization convention, fixed project-wide: density matrices are stacked
column-major (Fortran order), vec(rho)[i + dim*j] = rho[i, j].  Under this
convention vec(A rho B) = kron(B.T, A) @ vec(rho), so

    spre(A)  = kron(I, A)
    spost(B) = kron(B.T, I)

and tr(O rho) = O.ravel() @ vec(rho) for any operator O (row-major ravel of
O is exactly the column-major dual vector).
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .hilbert import composite_operators
from .params import ModelParams


def vec(rho: np.ndarray) -> np.ndarray:
    """Column-major stacking of a matrix into a vector."""
    return np.asarray(rho).reshape(-1, order="F")


def unvec(v: np.ndarray, dim: int) -> np.ndarray:
    """Inverse of :func:`vec`."""
    return np.asarray(v).reshape((dim, dim), order="F")


def spre(A) -> sp.csr_matrix:
    A = sp.csr_matrix(A)
    return sp.kron(sp.identity(A.shape[0], format="csr"), A, format="csr")


def spost(B) -> sp.csr_matrix:
    B = sp.csr_matrix(B)
    return sp.kron(B.T, sp.identity(B.shape[0], format="csr"), format="csr")


def _dissipator_matrix(X) -> sp.csr_matrix:
    """D[X] = X . X^+ - (1/2){X^+ X, .} as a sparse superoperator matrix."""
    Xs = sp.csr_matrix(X)
    XdX = Xs.conj().T @ Xs
    return (sp.kron(Xs.conj(), Xs, format="csr")
            - 0.5 * (spre(XdX) + spost(XdX))).tocsr()


@dataclass
class Superoperator:
    """A dim^2 x dim^2 generator acting on column-vectorized density matrices."""

    matrix: sp.csr_matrix
    dim: int
    params: ModelParams | None = None
    _bound: float | None = field(default=None, repr=False, compare=False)
    _prop: tuple | None = field(default=None, repr=False, compare=False)

    def __matmul__(self, v):
        return self.matrix @ v

    def spectral_bound(self) -> float:
        """Estimated spectral radius (power iteration, deterministic start).

        Used to pick stable explicit time steps; inflated by 5% for margin.
        """
        if self._bound is None:
            n = self.matrix.shape[0]
            # deterministic, generically non-orthogonal start vector
            idx = np.arange(n)
            v = np.cos(0.7 * idx) + 1j * np.sin(0.3 * idx + 0.1)
            v /= np.linalg.norm(v)
            lam = 0.0
            for _ in range(80):
                w = self.matrix @ v
                lam = np.linalg.norm(w)
                if lam == 0.0:
                    break
                v = w / lam
            self._bound = 1.05 * lam
        return self._bound

    def kernel_arrays(self):
        """CSR triplet with dtypes the propagation kernels expect."""
        if self._prop is None:
            m = self.matrix
            self._prop = (
                np.ascontiguousarray(m.data, dtype=np.complex128),
                np.ascontiguousarray(m.indices, dtype=np.int32),
                np.ascontiguousarray(m.indptr, dtype=np.int32),
            )
        return self._prop


def dissipator(X) -> Superoperator:
    """Lindblad dissipator D[X] as a :class:`Superoperator`.

    D[X](rho) = X rho X^+ - (1/2){X^+ X, rho}; trace-annihilating.
    """
    X = np.asarray(X)
    if X.ndim != 2 or X.shape[0] != X.shape[1]:
        raise ValueError("dissipator argument must be a square matrix")
    return Superoperator(matrix=_dissipator_matrix(X), dim=X.shape[0])


def liouvillian_from_parts(H, collapse, params=None) -> Superoperator:
    """Assemble -i[H, .] + sum_k rate_k D[X_k] as a sparse superoperator.

    Parameters
    ----------
    H : array_like
        Hamiltonian (Hermitian), dim x dim.
    collapse : iterable of (rate, X)
        Lindblad channels; each contributes rate * D[X].
    """
    H = np.asarray(H)
    dim = H.shape[0]
    L = -1j * (spre(H) - spost(H))
    for rate, X in collapse:
        if rate != 0.0:
            L = L + rate * _dissipator_matrix(X)
    L = L.tocsr()
    L.sum_duplicates()
    L.eliminate_zeros()
    return Superoperator(matrix=L, dim=dim, params=params)


def build_hamiltonian(p: ModelParams) -> np.ndarray:
    """Hamiltonian in the frame rotating at the drive frequency.

    H = -delta_omega (a^+ a + sigma_+ sigma_-) + g (a sigma_+ + a^+ sigma_-)
        + eps_d (a + a^+)
    """
    ops = composite_operators(p.n_max)
    return (
        -p.delta_omega * (ops.number + ops.excitation)
        + p.g * (ops.a @ ops.sp + ops.ad @ ops.sm)
        + p.eps_d * (ops.a + ops.ad)
    )


def build_liouvillian(p: ModelParams) -> Superoperator:
    """Full master-equation generator in the rotating frame.

    L rho = -i[H, rho] + kappa (2 a rho a^+ - a^+ a rho - rho a^+ a)
            + (gamma/2) (2 sigma_- rho sigma_+ - sigma_+ sigma_- rho - rho sigma_+ sigma_-)

    i.e. photon number decays at 2*kappa and the excited atom at gamma.
    """
    ops = composite_operators(p.n_max)
    H = build_hamiltonian(p)
    return liouvillian_from_parts(
        H, [(2.0 * p.kappa, ops.a), (p.gamma, ops.sm)], params=p
    )


def check_density_matrix(rho: np.ndarray, herm_tol=1e-10, trace_tol=1e-10,
                         pos_tol=1e-8) -> None:
    """Raise ValueError unless rho is Hermitian, unit-trace and positive.

    Tolerances follow the library-wide contracts: Hermiticity and trace to
    1e-10, eigenvalue floor -1e-8.
    """
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError("density matrix must be square")
    herm = np.max(np.abs(rho - rho.conj().T))
    if herm > herm_tol:
        raise ValueError(f"not Hermitian: max |rho - rho^+| = {herm:.3e}")
    tr = np.trace(rho)
    if abs(tr - 1.0) > trace_tol:
        raise ValueError(f"trace {tr} differs from 1")
    min_eig = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)).min()
    if min_eig < -pos_tol:
        raise ValueError(f"negative eigenvalue {min_eig:.3e}")
