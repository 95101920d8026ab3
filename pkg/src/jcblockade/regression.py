"""Time propagation and two-time correlations via the quantum regression theorem.

A two-time average <A(0) B(tau)> is evaluated by propagating the conditioned
operator (rho A or B rho A, depending on ordering) with the same generator
that evolves one-time averages, then tracing against the outer operator at
each sample time.  The propagator is fixed-step RK4 on the vectorized
equation with the step chosen from the generator's spectral radius; sampled
results are required to be stable under step refinement (see tests).
"""

import numpy as np

from . import _kernels
from .errors import StiffnessError, UndefinedCorrelationError, WindowTooShortError
from .hilbert import composite_operators
from .liouvillian import Superoperator, unvec, vec
from .steadystate import expectation
from .traces import CorrelationTrace, SpectrumTrace

#: RK4 stability fraction of the estimated spectral radius
_CFL = 2.5
#: minimum substeps per sample interval (keeps phase error small at the
#: sampled frequencies when the grid resolves oscillations)
_MIN_SUBSTEPS = 2


def _segments(tau_grid, h_max, refine=1):
    dtaus = np.diff(tau_grid)
    nsub = np.maximum(np.ceil(dtaus / h_max).astype(np.int64), _MIN_SUBSTEPS)
    nsub *= refine
    return dtaus / nsub, nsub


def _propagate(L: Superoperator, x0: np.ndarray, observables, tau_grid,
               refine=1):
    """Sample tr(O_q e^{L tau} X0) on tau_grid for each observable O_q."""
    tau_grid = np.asarray(tau_grid, dtype=float)
    if tau_grid[0] != 0.0 or np.any(np.diff(tau_grid) <= 0):
        raise ValueError("tau_grid must start at 0 and strictly increase")
    h_max = _CFL / L.spectral_bound()
    h_arr, nsub_arr = _segments(tau_grid, h_max, refine)
    obs = np.stack([np.asarray(O, dtype=complex).ravel() for O in observables])
    data, indices, indptr = L.kernel_arrays()
    samples, v_final = _kernels.rk4_sample(
        data, indices, indptr, vec(x0), h_arr, nsub_arr, obs
    )
    if not (np.all(np.isfinite(samples)) and np.all(np.isfinite(v_final))):
        raise StiffnessError(
            f"propagation diverged (dim={L.dim}, h={h_arr.min():.3e}, "
            f"bound={L.spectral_bound():.3e}); generator may not be dissipative"
        )
    return samples, v_final


def evolve(L: Superoperator, rho0: np.ndarray, t: float,
           refine: int = 1) -> np.ndarray:
    """Numerically integrated e^{L t} rho0.

    Trace is preserved to 1e-8 over the full integration (checked).
    """
    if t < 0:
        raise ValueError("t must be non-negative")
    rho0 = np.asarray(rho0, dtype=complex)
    if t == 0.0:
        return rho0.copy()
    tr0 = np.trace(rho0)
    _, v = _propagate(L, rho0, [np.eye(L.dim)], np.array([0.0, t]), refine)
    rho = unvec(v, L.dim)
    if abs(np.trace(rho) - tr0) > 1e-8 * max(1.0, abs(tr0)):
        raise StiffnessError(
            f"trace drifted by {abs(np.trace(rho) - tr0):.3e} during propagation"
        )
    return rho


def _ops_for(L: Superoperator):
    n_max = L.dim // 2 - 1
    return composite_operators(n_max)


def g2_atomic(L: Superoperator, rho_ss: np.ndarray, tau_grid,
              refine: int = 1) -> CorrelationTrace:
    """Normalized intensity correlation of the atomic (side-scattered) emission.

    g2(tau) = tr{[e^{L tau}(sigma- rho sigma+ / N)] sigma+ sigma-} / N
    with N = tr(sigma- rho sigma+) = <sigma+ sigma->_ss.  g2(0) = 0 because
    sigma-^2 = 0.
    """
    ops = _ops_for(L)
    return _g2(L, rho_ss, tau_grid, ops.sm, ops.sp, "atomic-g2", refine)


def g2_field(L: Superoperator, rho_ss: np.ndarray, tau_grid,
             refine: int = 1) -> CorrelationTrace:
    """Normalized intensity correlation of the cavity (forward) output field."""
    ops = _ops_for(L)
    return _g2(L, rho_ss, tau_grid, ops.a, ops.ad, "field-g2", refine)


def _g2(L, rho_ss, tau_grid, lower, raise_, kind, refine):
    rho_ss = np.asarray(rho_ss, dtype=complex)
    cond = lower @ rho_ss @ raise_
    norm = np.trace(cond).real
    if norm <= 1e-12:
        raise UndefinedCorrelationError(
            f"steady-state excitation {norm:.3e} too small for {kind}"
        )
    samples, _ = _propagate(L, cond / norm, [raise_ @ lower], tau_grid, refine)
    values = samples[0].real / norm
    return CorrelationTrace(np.asarray(tau_grid, float), values, kind)


def gn_zero_delay(rho_ss: np.ndarray, n: int) -> float:
    """Zero-delay n-th order coherence of the cavity field, <a+^n a^n>/<a+a>^n."""
    if n not in (2, 3):
        raise ValueError("order n must be 2 or 3")
    rho_ss = np.asarray(rho_ss, dtype=complex)
    n_max = rho_ss.shape[0] // 2 - 1
    ops = composite_operators(n_max)
    nbar = expectation(rho_ss, ops.number).real
    if nbar <= 1e-12:
        raise UndefinedCorrelationError(f"photon number {nbar:.3e} too small")
    an = np.linalg.matrix_power(ops.a, n)
    return expectation(rho_ss, an.conj().T @ an).real / nbar ** n


def first_order_atomic(L: Superoperator, rho_ss: np.ndarray, tau_grid,
                       refine: int = 1) -> CorrelationTrace:
    """Incoherent first-order correlation <Delta sigma+(0) Delta sigma-(tau)>_ss.

    Uses fluctuation operators Delta sigma = sigma - <sigma>_ss, so the
    stationary coherent contribution |<sigma->_ss|^2 is already removed and
    the trace decays to zero.  Values are complex; the transform of this
    trace is the incoherent fluorescence spectrum.
    """
    rho_ss = np.asarray(rho_ss, dtype=complex)
    ops = _ops_for(L)
    eye = np.eye(L.dim)
    sm_avg = expectation(rho_ss, ops.sm)
    dsm = ops.sm - sm_avg * eye
    dsp = dsm.conj().T
    samples, _ = _propagate(L, rho_ss @ dsp, [dsm], tau_grid, refine)
    return CorrelationTrace(np.asarray(tau_grid, float), samples[0],
                            "first-order-atomic")


def _check_decayed(corr: CorrelationTrace, tail_tol: float):
    tail = abs(corr.values[-1] - corr.baseline)
    if tail > tail_tol:
        raise WindowTooShortError(
            f"correlation tail {tail:.3e} above {tail_tol:.1e}; "
            f"extend the tau window beyond {corr.tau_grid[-1]:.3g}"
        )


def spectrum(corr: CorrelationTrace, omega_grid,
             tail_tol: float = 1e-6) -> SpectrumTrace:
    """One-sided transform S(omega) = (1/pi) Re int_0^inf e^{i omega tau} C(tau) dtau.

    Trapezoidal quadrature on the (possibly non-uniform) tau grid, no window
    function; the trace must have decayed below ``tail_tol`` at its last
    point.  Frequencies are relative to the rotating frame, i.e. omega here
    means omega_lab - omega_d.
    """
    _check_decayed(corr, tail_tol)
    ft = _kernels.oneside_fourier(
        corr.tau_grid, corr.values - corr.baseline, np.asarray(omega_grid, float)
    )
    return SpectrumTrace(np.asarray(omega_grid, float), ft.real / np.pi)


def fourier_magnitude(corr: CorrelationTrace, omega_grid=None,
                      tail_tol: float = 1e-6) -> SpectrumTrace:
    """|FT[C(tau) - baseline]| on a frequency grid (baseline 1 for g2 traces).

    With ``omega_grid=None`` the grid spans [0, 0.9*Nyquist] in steps of one
    transform bin 2*pi/T.
    """
    _check_decayed(corr, tail_tol)
    tau = corr.tau_grid
    if omega_grid is None:
        dt = np.median(np.diff(tau))
        omega_grid = np.arange(0.0, 0.9 * np.pi / dt, 2.0 * np.pi / tau[-1])
    ft = _kernels.oneside_fourier(
        tau, corr.values - corr.baseline, np.asarray(omega_grid, float)
    )
    return SpectrumTrace(np.asarray(omega_grid, float), np.abs(ft))


def uniform_tau_grid(tau_max: float, sample_freq: float,
                     points_per_period: int = 20) -> np.ndarray:
    """Uniform grid on [0, tau_max] resolving ``sample_freq`` with
    ``points_per_period`` samples per oscillation period."""
    dt = (2.0 * np.pi / sample_freq) / points_per_period
    n = int(np.ceil(tau_max / dt))
    return np.linspace(0.0, n * dt, n + 1)
