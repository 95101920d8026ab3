"""Driven dissipative Jaynes-Cummings oscillator in the photon-blockade regime.

Solves the full Lindblad master equation on a truncated Fock space (steady
states, two-time correlations via the quantum regression theorem, spectra,
Wigner functions) and cross-validates it against the analytic four-level
cascade model of the two-photon resonance.  The ``sim`` command-line tool
reproduces the reference figure data.
"""

from .errors import (
    AmbiguousSteadyStateError,
    BlockadeError,
    DegenerateParametersError,
    InvalidTruncationError,
    RegimeWarning,
    SteadyStateSolverError,
    StiffnessError,
    TruncationWarning,
    UndefinedCorrelationError,
    WindowTooShortError,
)
from .fourlevel import (
    FourLevelParams,
    G2Coefficients,
    bloch_solution,
    conditional_state,
    derive_params,
    evolve_effective,
    g2_analytic,
    g2_coefficients,
    g2_from_effective,
    quantum_beat_term,
    resonant_drive_frequency,
    steady_occupations,
    truncated_operators,
)
from .hilbert import (
    atomic_lowering,
    basis_state,
    composite_operators,
    dressed_states,
    fock_annihilation,
    tensor,
)
from .liouvillian import (
    Superoperator,
    build_hamiltonian,
    build_liouvillian,
    check_density_matrix,
    dissipator,
    liouvillian_from_parts,
    spost,
    spre,
    unvec,
    vec,
)
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
    evolve,
    first_order_atomic,
    fourier_magnitude,
    g2_atomic,
    g2_field,
    gn_zero_delay,
    spectrum,
    uniform_tau_grid,
)
from .steadystate import expectation, steady_state
from .traces import CorrelationTrace, SpectrumTrace

__version__ = "0.1.0"
