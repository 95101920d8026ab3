"""Hot numeric kernels: RK4 propagation, Wigner grids, one-sided transforms.

Each kernel has a numba-compiled implementation and a pure numpy/scipy
fallback.  The fallback is selected automatically when numba is missing, or
forced by setting the environment variable ``JCBLOCKADE_NO_NUMBA`` to a
non-empty value.  ``benchmarks/bench_kernels.py`` compares the two paths.
"""

import math
import os

import numpy as np
import scipy.sparse as sp

_FORCE_NUMPY = bool(os.environ.get("JCBLOCKADE_NO_NUMBA"))

try:
    from numba import njit, prange

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(f):
            return f
        return wrap

    prange = range

USE_NUMBA = HAVE_NUMBA and not _FORCE_NUMPY


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# RK4 propagation of dv/dt = L v with sampling of observable functionals
# ---------------------------------------------------------------------------

@njit(cache=True, fastmath=True)
def _csr_matvec(data, indices, indptr, x, out):
    for i in range(indptr.size - 1):
        acc = 0.0 + 0.0j
        for k in range(indptr[i], indptr[i + 1]):
            acc += data[k] * x[indices[k]]
        out[i] = acc


@njit(cache=True, fastmath=True)
def _rk4_sample_numba(data, indices, indptr, v, h_arr, nsub_arr, obs):
    n = v.size
    n_obs = obs.shape[0]
    out = np.empty((n_obs, h_arr.size + 1), np.complex128)
    k1 = np.empty(n, np.complex128)
    k2 = np.empty(n, np.complex128)
    k3 = np.empty(n, np.complex128)
    k4 = np.empty(n, np.complex128)
    w = np.empty(n, np.complex128)
    for q in range(n_obs):
        acc = 0.0 + 0.0j
        for i in range(n):
            acc += obs[q, i] * v[i]
        out[q, 0] = acc
    for seg in range(h_arr.size):
        h = h_arr[seg]
        for _ in range(nsub_arr[seg]):
            _csr_matvec(data, indices, indptr, v, k1)
            for i in range(n):
                w[i] = v[i] + 0.5 * h * k1[i]
            _csr_matvec(data, indices, indptr, w, k2)
            for i in range(n):
                w[i] = v[i] + 0.5 * h * k2[i]
            _csr_matvec(data, indices, indptr, w, k3)
            for i in range(n):
                w[i] = v[i] + h * k3[i]
            _csr_matvec(data, indices, indptr, w, k4)
            sixth = h / 6.0
            for i in range(n):
                v[i] = v[i] + sixth * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i])
        for q in range(n_obs):
            acc = 0.0 + 0.0j
            for i in range(n):
                acc += obs[q, i] * v[i]
            out[q, seg + 1] = acc
    return out


def _rk4_sample_numpy(data, indices, indptr, v, h_arr, nsub_arr, obs):
    n = v.size
    L = sp.csr_matrix((data, indices, indptr), shape=(n, n))
    out = np.empty((obs.shape[0], h_arr.size + 1), np.complex128)
    out[:, 0] = obs @ v
    for seg in range(h_arr.size):
        h = h_arr[seg]
        for _ in range(nsub_arr[seg]):
            k1 = L @ v
            k2 = L @ (v + (0.5 * h) * k1)
            k3 = L @ (v + (0.5 * h) * k2)
            k4 = L @ (v + h * k3)
            v += (h / 6.0) * (k1 + 2.0 * (k2 + k3) + k4)
        out[:, seg + 1] = obs @ v
    return out


def rk4_sample(data, indices, indptr, v0, h_arr, nsub_arr, obs):
    """Propagate v0 under the CSR generator, sampling obs @ v at segment ends.

    The trajectory advances through ``len(h_arr)`` segments; segment ``i``
    consists of ``nsub_arr[i]`` RK4 steps of size ``h_arr[i]``.  Returns
    (samples, v_final); samples[q, j] = obs[q] @ v at the end of segment j-1,
    with column 0 the initial values.
    """
    v = np.array(v0, dtype=np.complex128, copy=True)
    obs = np.ascontiguousarray(obs, dtype=np.complex128)
    h_arr = np.ascontiguousarray(h_arr, dtype=np.float64)
    nsub_arr = np.ascontiguousarray(nsub_arr, dtype=np.int64)
    if USE_NUMBA:
        out = _rk4_sample_numba(data, indices, indptr, v, h_arr, nsub_arr, obs)
    else:
        out = _rk4_sample_numpy(data, indices, indptr, v, h_arr, nsub_arr, obs)
    return out, v


# ---------------------------------------------------------------------------
# Wigner function via the displaced-parity kernel
# ---------------------------------------------------------------------------
#
# W(alpha) = (2/pi) tr[rho D(alpha) Pi D(-alpha)] evaluated with the exact
# (untruncated) matrix elements of the displaced parity operator, which obey
# two-term Laguerre-style recurrences in the Fock indices.  Exact for any rho
# supported on the truncated space.

@njit(cache=True)
def _wigner_points_numba(rho, alpha, out):
    M = rho.shape[0]
    wl = np.empty(M, np.complex128)
    for p in range(alpha.size):
        A = alpha[p]
        B = 2.0 * A
        Bc = 2.0 * np.conj(A)
        w0 = math.exp(-2.0 * (A.real * A.real + A.imag * A.imag)) / math.pi
        wl[0] = w0
        acc = rho[0, 0].real * w0
        for n in range(1, M):
            wl[n] = wl[n - 1] * B / math.sqrt(n)
            acc += 2.0 * (rho[0, n] * wl[n]).real
        for m in range(1, M):
            temp = wl[m]
            wl[m] = (Bc * temp - math.sqrt(m) * wl[m - 1]) / math.sqrt(m)
            acc += (rho[m, m] * wl[m]).real
            for n in range(m + 1, M):
                temp2 = (B * wl[n - 1] - math.sqrt(m) * temp) / math.sqrt(n)
                temp = wl[n]
                wl[n] = temp2
                acc += 2.0 * (rho[m, n] * wl[n]).real
        out[p] = 2.0 * acc


def _wigner_points_numpy(rho, alpha, out):
    M = rho.shape[0]
    B = 2.0 * alpha
    Bc = B.conj()
    wl = np.empty((M,) + alpha.shape, np.complex128)
    wl[0] = np.exp(-0.5 * np.abs(B) ** 2) / math.pi
    acc = rho[0, 0].real * wl[0].real.copy()
    for n in range(1, M):
        wl[n] = wl[n - 1] * B / math.sqrt(n)
        acc += 2.0 * (rho[0, n] * wl[n]).real
    for m in range(1, M):
        temp = wl[m].copy()
        wl[m] = (Bc * temp - math.sqrt(m) * wl[m - 1]) / math.sqrt(m)
        acc += (rho[m, m] * wl[m]).real
        for n in range(m + 1, M):
            temp2 = (B * wl[n - 1] - math.sqrt(m) * temp) / math.sqrt(n)
            temp = wl[n].copy()
            wl[n] = temp2
            acc += 2.0 * (rho[m, n] * wl[n]).real
    out[...] = 2.0 * acc


def wigner_points(rho, alpha):
    """W(alpha) for an array of phase-space points alpha = x + i y."""
    rho = np.ascontiguousarray(rho, dtype=np.complex128)
    alpha = np.asarray(alpha, dtype=np.complex128)
    out = np.empty(alpha.shape, np.float64)
    if USE_NUMBA:
        _wigner_points_numba(rho, alpha.ravel(), out.reshape(-1))
    else:
        _wigner_points_numpy(rho, alpha, out)
    return out


# ---------------------------------------------------------------------------
# One-sided Fourier transform by trapezoidal quadrature
# ---------------------------------------------------------------------------

@njit(cache=True, parallel=True)
def _fourier_numba(tau, wvals, omega, uniform_dt, out):
    n = tau.size
    for io in prange(omega.size):
        om = omega[io]
        acc = 0.0 + 0.0j
        if uniform_dt > 0.0:
            rot = complex(math.cos(om * uniform_dt), math.sin(om * uniform_dt))
            ph = 1.0 + 0.0j
            for j in range(n):
                if j % 256 == 0:  # refresh against recurrence drift
                    ph = complex(math.cos(om * tau[j]), math.sin(om * tau[j]))
                acc += wvals[j] * ph
                ph *= rot
        else:
            for j in range(n):
                acc += wvals[j] * complex(math.cos(om * tau[j]),
                                          math.sin(om * tau[j]))
        out[io] = acc


def _fourier_numpy(tau, wvals, omega, out):
    chunk = max(1, int(4e6) // max(1, tau.size))
    for i0 in range(0, omega.size, chunk):
        om = omega[i0:i0 + chunk]
        out[i0:i0 + chunk] = np.exp(1j * np.outer(om, tau)) @ wvals
    return out


def oneside_fourier(tau, values, omega):
    """integral_0^T exp(i omega tau) values(tau) d tau, trapezoid weights.

    Safe for non-uniform tau grids; uniform grids take a faster phase
    recurrence path under numba.
    """
    tau = np.ascontiguousarray(tau, dtype=np.float64)
    values = np.ascontiguousarray(values, dtype=np.complex128)
    omega = np.ascontiguousarray(omega, dtype=np.float64)
    w = np.empty_like(tau)
    w[0] = 0.5 * (tau[1] - tau[0])
    w[-1] = 0.5 * (tau[-1] - tau[-2])
    w[1:-1] = 0.5 * (tau[2:] - tau[:-2])
    wvals = w * values
    out = np.empty(omega.shape, np.complex128)
    if USE_NUMBA:
        dts = np.diff(tau)
        dt0 = dts[0]
        uniform = float(dt0) if np.max(np.abs(dts - dt0)) < 1e-12 * dt0 else -1.0
        _fourier_numba(tau, wvals, omega, uniform, out)
    else:
        _fourier_numpy(tau, wvals, omega, out)
    return out
