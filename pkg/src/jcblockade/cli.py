"""``sim`` command line tool: figure-data reproduction and trace export.

Subcommands map one-to-one onto the reference data sets: ``sweep-detuning``
(multi-photon resonance scan), ``g2`` (analytic + full-model intensity
correlations with transform sidecar), ``spectrum`` (incoherent fluorescence
spectrum with predicted-peak sidecar), ``wigner`` (phase-space grids) and
``blockade-window`` (zero-delay field correlations vs drive).

Config precedence: command-line flags > config file > named preset.
Outputs are deterministic: identical resolved configs produce byte-identical
files.
"""

import argparse
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields

import numpy as np

from . import __version__
from .errors import (
    AmbiguousSteadyStateError,
    BlockadeError,
    StiffnessError,
    SteadyStateSolverError,
    WindowTooShortError,
)
from .fourlevel import derive_params, g2_analytic, resonant_drive_frequency
from .hilbert import composite_operators
from .liouvillian import build_liouvillian
from .observables import (
    atomic_inversion,
    fidelity_m,
    fock_occupations,
    partial_trace_atom,
    wigner,
    wigner_normalization,
)
from .params import ModelParams
from .regression import (
    first_order_atomic,
    fourier_magnitude,
    g2_atomic,
    gn_zero_delay,
    spectrum,
    uniform_tau_grid,
)
from .steadystate import expectation, steady_state
from .traces import CorrelationTrace

SQRT2 = math.sqrt(2.0)

PRESETS = {
    "fig2": {"g-over-kappa": 1000.0, "gamma-over-kappa": 2.0, "eps-over-kappa": 40.0,
             "delta-min": -1.05, "delta-max": -0.5, "delta-steps": 111},
    "fig3a": {"g-over-kappa": 1000.0, "gamma-over-kappa": 2.0, "eps-over-kappa": 20.0},
    "fig3b": {"g-over-kappa": 1000.0, "gamma-over-kappa": 2.0, "eps-over-kappa": 60.0},
    "fig4a": {"g-over-kappa": 1000.0, "gamma-over-kappa": 2.0, "eps-over-kappa": 20.0},
    "fig4b": {"g-over-kappa": 1000.0, "gamma-over-kappa": 2.0, "eps-over-kappa": 60.0},
    "fig5a": {"g-over-kappa": 1000.0, "gamma-over-kappa": 2.0, "eps-over-kappa": 60.0,
              "delta-over-g": -1.0 / SQRT2},
    "fig5b": {"g-over-kappa": 1000.0, "gamma-over-kappa": 2.0, "eps-over-kappa": 60.0,
              "delta-over-g": -1.0 / math.sqrt(3.0)},
}

#: the three phase-space insets of the detuning sweep figure
WIGNER_PRESET_DETUNINGS = (-1.0 / 1.40, -1.0 / SQRT2, -1.0 / 1.42)


class ConfigError(BlockadeError):
    pass


@dataclass
class RunConfig:
    """Fully resolved settings of one CLI invocation."""

    command: str = ""
    g_over_kappa: float = 1000.0
    gamma_over_kappa: float = 2.0
    eps_over_kappa: float = 40.0
    delta_over_g: float | None = None
    variant: str = "shifted"
    n_max: int = 30
    tau_max: float | None = None
    points_per_period: int = 20
    delta_min: float = -1.05
    delta_max: float = -0.5
    delta_steps: int = 111
    omega_max: float = 2.3
    omega_step: float = 0.5
    grid_points: int = 121
    grid_extent: float = 3.0
    eps_list: str = "3,6,10,12,15,20,26,33,40"
    out: str = "sim_out.csv"
    format: str = "csv"
    workers: int = 1
    self_test: bool = False

    def model_params(self, eps=None, delta_over_g=None) -> ModelParams:
        eps = self.eps_over_kappa if eps is None else eps
        p0 = ModelParams(g=self.g_over_kappa, kappa=1.0,
                         gamma=self.gamma_over_kappa, eps_d=eps,
                         delta_omega=0.0, n_max=self.n_max)
        if delta_over_g is None:
            delta_over_g = self.delta_over_g
        if delta_over_g is None:
            delta = resonant_drive_frequency(p0, self.variant)
        else:
            delta = delta_over_g * self.g_over_kappa
        return ModelParams(g=self.g_over_kappa, kappa=1.0,
                           gamma=self.gamma_over_kappa, eps_d=eps,
                           delta_omega=delta, n_max=self.n_max)

    def metadata(self) -> dict:
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            out[f.name.replace("_", "-")] = v
        return out


def _parse_scalar(text: str):
    for cast in (int, float):
        try:
            return cast(text)
        except ValueError:
            pass
    if text in ("true", "True"):
        return True
    if text in ("false", "False"):
        return False
    return text


def read_config_file(path: str) -> dict:
    """Flat key-value config: one ``key = value`` per line, # comments."""
    out = {}
    try:
        lines = open(path, encoding="utf-8").read().splitlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    for ln, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{ln}: expected 'key = value'")
        key, val = (s.strip() for s in line.split("=", 1))
        out[key.replace("_", "-")] = _parse_scalar(val)
    return out


_FLAGS = [
    ("g-over-kappa", float), ("gamma-over-kappa", float),
    ("eps-over-kappa", float), ("delta-over-g", float), ("n-max", int),
    ("tau-max", float), ("points-per-period", int), ("delta-min", float),
    ("delta-max", float), ("delta-steps", int), ("omega-max", float),
    ("omega-step", float), ("grid-points", int), ("grid-extent", float),
    ("eps-list", str), ("out", str), ("workers", int), ("variant", str),
]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sim",
        description="Driven Jaynes-Cummings photon-blockade simulations",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    descriptions = {
        "sweep-detuning": "steady-state observables across a detuning scan",
        "g2": "analytic and full-model intensity correlations of side scattering",
        "spectrum": "incoherent fluorescence spectrum with predicted peak positions",
        "wigner": "steady-state Wigner distribution grids",
        "blockade-window": "zero-delay field correlations g_F^(2,3)(0) vs drive",
    }
    for name, desc in descriptions.items():
        cmd = sub.add_parser(name, help=desc)
        cmd.add_argument("--preset", choices=sorted(PRESETS))
        cmd.add_argument("--config")
        cmd.add_argument("--format", choices=["csv", "json"])
        for flag, typ in _FLAGS:
            cmd.add_argument(f"--{flag}", type=typ)
        if name == "spectrum":
            cmd.add_argument("--self-test", action="store_true")
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=args.command)
    layers = []
    if args.preset:
        layers.append(PRESETS[args.preset])
    if args.config:
        layers.append(read_config_file(args.config))
    cli_layer = {}
    for flag, _ in _FLAGS + [("format", str)]:
        val = getattr(args, flag.replace("-", "_"), None)
        if val is not None:
            cli_layer[flag] = val
    if getattr(args, "self_test", False):
        cli_layer["self-test"] = True
    layers.append(cli_layer)
    known = {f.name for f in fields(RunConfig)}
    for layer in layers:
        for key, val in layer.items():
            attr = key.replace("-", "_")
            if attr not in known:
                raise ConfigError(f"unknown config key {key!r}")
            setattr(cfg, attr, val)
    if cfg.format not in ("csv", "json"):
        raise ConfigError(f"unknown format {cfg.format!r}")
    if cfg.workers < 1:
        raise ConfigError("workers must be >= 1")
    return cfg


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------

def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.12e}"
    return str(x)


def write_table(path: str, header: list, rows: list, meta: dict, fmt: str):
    if fmt == "csv":
        lines = [",".join(header)]
        lines += [f"# {k}={v}" for k, v in sorted(meta.items())]
        lines += [",".join(_fmt(x) for x in row) for row in rows]
        text = "\n".join(lines) + "\n"
    else:
        clean = [[None if isinstance(x, float) and math.isnan(x) else x
                  for x in row] for row in rows]
        text = json.dumps(
            {"config": meta, "columns": header, "rows": clean},
            sort_keys=True, indent=1,
        ) + "\n"
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    return path


def _sidecar(path: str, tag: str) -> str:
    stem, dot, ext = path.rpartition(".")
    if not dot:
        return f"{path}_{tag}"
    return f"{stem}_{tag}.{ext}"


# ---------------------------------------------------------------------------
# sweep-detuning
# ---------------------------------------------------------------------------

def _sweep_point(task):
    cfg_dict, delta_over_g = task
    cfg = RunConfig(**cfg_dict)
    nan = float("nan")
    try:
        p = cfg.model_params(delta_over_g=delta_over_g)
        rho = steady_state(build_liouvillian(p))
        rf = partial_trace_atom(rho)
        occ = fock_occupations(rf)
        navg = float(np.sum(occ * np.arange(occ.size)))
        return [delta_over_g, atomic_inversion(rho), float(occ[0]), float(occ[1]),
                float(occ[2]), 1.0 - float(occ[3]), fidelity_m(rf, 1),
                fidelity_m(rf, 2), navg, 0]
    except Exception:
        return [delta_over_g, nan, nan, nan, nan, nan, nan, nan, nan, 1]


def cmd_sweep_detuning(cfg: RunConfig) -> list:
    deltas = np.linspace(cfg.delta_min, cfg.delta_max, cfg.delta_steps)
    cfg_dict = {f.name: getattr(cfg, f.name) for f in fields(cfg)}
    tasks = [(cfg_dict, float(d)) for d in deltas]
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            rows = list(pool.map(_sweep_point, tasks))
    else:
        rows = [_sweep_point(t) for t in tasks]
    header = ["delta_over_g", "sigma_z", "P0", "P1", "P2", "one_minus_P3",
              "F1", "F2", "n_avg", "failed"]
    path = write_table(cfg.out, header, rows, cfg.metadata(), cfg.format)
    return [path]


# ---------------------------------------------------------------------------
# g2
# ---------------------------------------------------------------------------

def cmd_g2(cfg: RunConfig) -> list:
    p = cfg.model_params()
    fp = derive_params(p)
    tau_max = cfg.tau_max if cfg.tau_max is not None else 16.0 / p.gamma
    tau = uniform_tau_grid(tau_max, fp.beat_freq, cfg.points_per_period)
    analytic = g2_analytic(fp, tau)
    analytic_nb = g2_analytic(fp, tau, include_beat=False)
    L = build_liouvillian(p)
    numeric = g2_atomic(L, steady_state(L), tau)

    beat_periods = tau * fp.beat_freq / (2.0 * math.pi)
    rows = [[float(t), float(bp), float(a), float(nb), float(nm)]
            for t, bp, a, nb, nm in zip(tau, beat_periods, analytic.values,
                                        analytic_nb.values, numeric.values)]
    header = ["tau_kappa", "tau_beat_periods", "g2_analytic",
              "g2_analytic_nobeat", "g2_numeric"]
    meta = cfg.metadata()
    meta["delta-omega-resolved"] = p.delta_omega
    meta["beat-freq-kappa"] = fp.beat_freq
    paths = [write_table(cfg.out, header, rows, meta, cfg.format)]

    omega = np.arange(0.0, 3.5 * p.g, 2.0 * math.pi / tau[-1])
    ft_an = fourier_magnitude(analytic, omega)
    ft_num = fourier_magnitude(numeric, omega)
    ft_rows = [[float(om), float(om / p.g), float(fa), float(fn)]
               for om, fa, fn in zip(omega, ft_an.values, ft_num.values)]
    paths.append(write_table(
        _sidecar(cfg.out, "fft"),
        ["omega_kappa", "omega_over_g", "fft_mag_analytic", "fft_mag_numeric"],
        ft_rows, meta, cfg.format,
    ))
    return paths


# ---------------------------------------------------------------------------
# spectrum
# ---------------------------------------------------------------------------

def predicted_peak_positions(p: ModelParams) -> list:
    """The five dominant line positions as (label, (omega-omega_d)/g).

    Transition energies between the drive-shifted levels, referenced to the
    drive; the 0<->3 two-photon line radiates at half its level splitting,
    i.e. exactly at the drive frequency when driven at the shifted resonance.
    """
    fp = derive_params(p)
    d0, d1, d2, d3 = fp.shifts
    dw = p.delta_omega
    e10 = -dw - p.g + d1 - d0
    e20 = -dw + p.g + d2 - d0
    e30 = -2.0 * dw - SQRT2 * p.g + d3 - d0
    e31 = e30 - e10
    e32 = e30 - e20
    lines = [("E3-E2", e32), ("E1-E0", e10), ("E3-E0-two-photon", e30 / 2.0),
             ("E3-E1", e31), ("E2-E0", e20)]
    return [(lab, val / p.g) for lab, val in lines]


def detect_peaks(omega: np.ndarray, values: np.ndarray, n_top: int) -> list:
    """Positions of the n_top largest interior local maxima, sorted by omega."""
    idx = [i for i in range(1, omega.size - 1)
           if values[i] > values[i - 1] and values[i] > values[i + 1]]
    idx.sort(key=lambda i: -values[i])
    return sorted(float(omega[i]) for i in idx[:n_top])


def cmd_spectrum(cfg: RunConfig) -> list:
    meta = cfg.metadata()
    if cfg.self_test:
        # manufactured single-exponential correlation; exact transform is a
        # Lorentzian of half-width gamma peaked at 0 with height 1/(pi*gamma)
        gam = cfg.gamma_over_kappa
        tau = uniform_tau_grid(30.0 / gam, 40.0 * gam, cfg.points_per_period)
        corr = CorrelationTrace(tau, np.exp(-gam * tau) + 0j, "first-order-atomic")
        omega = np.arange(-20.0 * gam, 20.0 * gam + 1e-12, 0.05 * gam)
        S = spectrum(corr, omega)
        exact = (gam / math.pi) / (gam ** 2 + omega ** 2)
        rows = [[float(om), float(s), float(e), float(abs(s - e))]
                for om, s, e in zip(omega, S.values, exact)]
        path = write_table(cfg.out, ["omega_kappa", "S", "S_exact", "abs_err"],
                           rows, meta, cfg.format)
        print(f"lorentzian self-test: max |S - exact| = "
              f"{np.max(np.abs(S.values - exact)):.3e}")
        return [path]

    p = cfg.model_params()
    fp = derive_params(p)
    tau_max = cfg.tau_max if cfg.tau_max is not None else 36.0 / p.gamma
    tau = uniform_tau_grid(tau_max, cfg.omega_max * p.g, 12)
    L = build_liouvillian(p)
    rho = steady_state(L)
    corr = first_order_atomic(L, rho, tau)
    omega = np.arange(-cfg.omega_max * p.g, cfg.omega_max * p.g + 1e-12,
                      cfg.omega_step)
    S = spectrum(corr, omega)
    meta["delta-omega-resolved"] = p.delta_omega
    rows = [[float(om / p.g), float(om), float(s)]
            for om, s in zip(omega, S.values)]
    paths = [write_table(cfg.out, ["omega_over_g", "omega_kappa", "S"], rows,
                         meta, cfg.format)]

    predictions = predicted_peak_positions(p)
    detected = detect_peaks(omega / p.g, S.values, n_top=len(predictions))
    peak_rows = []
    for (label, pred), det in zip(sorted(predictions, key=lambda t: t[1]),
                                  detected):
        peak_rows.append([label, float(pred), float(det), float(det - pred)])
    paths.append(write_table(
        _sidecar(cfg.out, "peaks"),
        ["transition", "predicted_omega_over_g", "detected_omega_over_g", "offset"],
        peak_rows, meta, cfg.format,
    ))
    return paths


# ---------------------------------------------------------------------------
# wigner
# ---------------------------------------------------------------------------

def cmd_wigner(cfg: RunConfig) -> list:
    detunings = ([cfg.delta_over_g] if cfg.delta_over_g is not None
                 else list(WIGNER_PRESET_DETUNINGS))
    grid = np.linspace(-cfg.grid_extent, cfg.grid_extent, cfg.grid_points)
    meta = cfg.metadata()
    rows = []
    for dg in detunings:
        p = cfg.model_params(delta_over_g=dg)
        rho_f = partial_trace_atom(steady_state(build_liouvillian(p)))
        W = wigner(rho_f, grid, grid)
        norm = wigner_normalization(W, grid, grid)
        meta[f"normalization-delta-{dg:.6f}"] = f"{norm:.9f}"
        print(f"wigner normalization at delta/g = {dg:.6f}: {norm:.9f}")
        for iy, yv in enumerate(grid):
            for ix, xv in enumerate(grid):
                rows.append([float(dg), float(xv), float(yv), float(W[iy, ix])])
    path = write_table(cfg.out, ["delta_over_g", "x", "y", "W"], rows, meta,
                       cfg.format)
    return [path]


# ---------------------------------------------------------------------------
# blockade-window
# ---------------------------------------------------------------------------

def classify_blockade(g2_0: float, g3_0: float) -> str:
    if g3_0 < 1.0 < g2_0:
        return "two-photon-blockade"
    if g2_0 < 1.0:
        return "antibunched"
    return "bunched"


def cmd_blockade_window(cfg: RunConfig) -> list:
    eps_values = [float(s) for s in cfg.eps_list.split(",") if s.strip()]
    delta_over_g = (cfg.delta_over_g if cfg.delta_over_g is not None
                    else -1.0 / SQRT2)
    rows = []
    for eps in eps_values:
        p = cfg.model_params(eps=eps, delta_over_g=delta_over_g)
        rho = steady_state(build_liouvillian(p))
        g2_0 = gn_zero_delay(rho, 2)
        g3_0 = gn_zero_delay(rho, 3)
        navg = expectation(rho, composite_operators(p.n_max).number).real
        rows.append([eps, navg, g2_0, g3_0, classify_blockade(g2_0, g3_0)])
    meta = cfg.metadata()
    meta["delta-over-g-resolved"] = delta_over_g
    path = write_table(cfg.out, ["eps_over_kappa", "n_avg", "gF2_0", "gF3_0",
                                 "classification"], rows, meta, cfg.format)
    return [path]


COMMANDS = {
    "sweep-detuning": cmd_sweep_detuning,
    "g2": cmd_g2,
    "spectrum": cmd_spectrum,
    "wigner": cmd_wigner,
    "blockade-window": cmd_blockade_window,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        paths = COMMANDS[cfg.command](cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except WindowTooShortError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (SteadyStateSolverError, AmbiguousSteadyStateError,
            StiffnessError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    for path in paths:
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
