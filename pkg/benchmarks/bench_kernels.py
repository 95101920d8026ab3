#!/usr/bin/env python3
"""Timings of the hot kernels: numba path vs pure numpy/scipy fallback.

Runs each kernel on production-sized inputs with both backends and prints a
comparison table.  Usage:

    python3 benchmarks/bench_kernels.py [--quick]

The numpy fallback is what you get with JCBLOCKADE_NO_NUMBA=1; this script
calls both implementations directly so one process covers both.
"""

import argparse
import time

import numpy as np

from jcblockade import ModelParams, build_liouvillian, steady_state
from jcblockade import _kernels
from jcblockade.observables import partial_trace_atom


def timeit(fn, repeats):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_rk4(L, quick):
    data, indices, indptr = L.kernel_arrays()
    n = L.matrix.shape[0]
    v0 = np.full(n, 1.0 / np.sqrt(n), np.complex128)
    obs = np.ones((2, n), np.complex128)
    n_seg = 40 if quick else 400
    h = 2.5 / L.spectral_bound()
    h_arr = np.full(n_seg, h)
    nsub = np.full(n_seg, 2, dtype=np.int64)
    steps = n_seg * 2

    def run_numba():
        _kernels._rk4_sample_numba(data, indices, indptr, v0.copy(), h_arr,
                                   nsub, obs)

    def run_numpy():
        _kernels._rk4_sample_numpy(data, indices, indptr, v0.copy(), h_arr,
                                   nsub, obs)

    if _kernels.HAVE_NUMBA:
        run_numba()  # compile outside the timed region
    t_nb = timeit(run_numba, 3) if _kernels.HAVE_NUMBA else float("nan")
    t_np = timeit(run_numpy, 3)
    return ("rk4 propagation", f"{steps} steps, dim {n}", t_nb, t_np)


def bench_wigner(rho_field, quick):
    npts = 61 if quick else 121
    grid = np.linspace(-3, 3, npts)
    alpha = grid[None, :] + 1j * grid[:, None]
    out = np.empty(alpha.shape)

    def run_numba():
        _kernels._wigner_points_numba(rho_field, alpha.ravel(),
                                      out.reshape(-1))

    def run_numpy():
        _kernels._wigner_points_numpy(rho_field, alpha, out)

    if _kernels.HAVE_NUMBA:
        run_numba()
    t_nb = timeit(run_numba, 3) if _kernels.HAVE_NUMBA else float("nan")
    t_np = timeit(run_numpy, 3)
    return ("wigner grid", f"{npts}x{npts}, dim {rho_field.shape[0]}",
            t_nb, t_np)


def bench_fourier(quick):
    n_tau = 20_000 if quick else 100_000
    n_om = 1_000 if quick else 4_000
    tau = np.linspace(0.0, 18.0, n_tau)
    vals = np.exp(-tau) * np.cos(2000.0 * tau) + 0j
    omegas = np.linspace(0.0, 2300.0, n_om)
    out = np.empty(n_om, np.complex128)
    w = np.gradient(tau)
    wvals = w * vals

    def run_numba():
        _kernels._fourier_numba(tau, wvals, omegas, tau[1] - tau[0], out)

    def run_numpy():
        _kernels._fourier_numpy(tau, wvals, omegas, out)

    if _kernels.HAVE_NUMBA:
        run_numba()
    t_nb = timeit(run_numba, 3) if _kernels.HAVE_NUMBA else float("nan")
    t_np = timeit(run_numpy, 3)
    return ("one-sided fourier", f"{n_om} freqs x {n_tau} samples, dim -",
            t_nb, t_np)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true",
                    help="smaller inputs (~seconds total)")
    args = ap.parse_args()

    n_max = 15 if args.quick else 30
    p = ModelParams(g=1000, kappa=1, gamma=2, eps_d=40,
                    delta_omega=-709.3695228863445, n_max=n_max)
    L = build_liouvillian(p)
    rho_field = np.ascontiguousarray(
        partial_trace_atom(steady_state(L)).astype(np.complex128))

    rows = [bench_rk4(L, args.quick), bench_wigner(rho_field, args.quick),
            bench_fourier(args.quick)]
    print(f"\nnumba available: {_kernels.HAVE_NUMBA}   "
          f"active backend: {_kernels.backend()}\n")
    print(f"{'kernel':<20} {'size':<34} {'numba [s]':>10} {'numpy [s]':>10} "
          f"{'speedup':>8}")
    for name, size, t_nb, t_np in rows:
        speed = t_np / t_nb if t_nb == t_nb else float("nan")
        print(f"{name:<20} {size:<34} {t_nb:>10.4f} {t_np:>10.4f} "
              f"{speed:>7.2f}x")


if __name__ == "__main__":
    main()
