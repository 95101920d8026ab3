import numpy as np
import pytest

from jcblockade import (
    AmbiguousSteadyStateError,
    ModelParams,
    basis_state,
    build_liouvillian,
    check_density_matrix,
    composite_operators,
    expectation,
    fock_occupations,
    partial_trace_atom,
    steady_state,
)

SMALL = ModelParams(g=40, kappa=1, gamma=2, eps_d=4,
                    delta_omega=-40 / np.sqrt(2) - np.sqrt(2) * 16 / 40,
                    n_max=6)


def test_undriven_steady_state_is_vacuum():
    p = ModelParams(g=40, kappa=1, gamma=2, eps_d=0, delta_omega=-28.0,
                    n_max=5)
    rho = steady_state(build_liouvillian(p))
    expected = np.outer(basis_state(5, 0, False), basis_state(5, 0, False))
    np.testing.assert_allclose(rho, expected, atol=1e-10)


def test_solver_contracts():
    rho = steady_state(build_liouvillian(SMALL))
    check_density_matrix(rho)
    assert np.linalg.eigvalsh(rho).min() >= -1e-8


def test_direct_and_eigen_strategies_agree():
    L = build_liouvillian(SMALL)
    rho_d = steady_state(L, method="direct")
    rho_e = steady_state(L, method="eigen")
    assert np.max(np.abs(rho_d - rho_e)) < 1e-8


def test_degenerate_kernel_detected():
    # with g = eps_d = gamma = 0 the atomic sector is untouched and the
    # kernel contains both vacuum (x) |-><-| and vacuum (x) |+><+|
    p = ModelParams(g=0, kappa=1, gamma=0, eps_d=0, delta_omega=0.0, n_max=3)
    L = build_liouvillian(p)
    with pytest.raises(AmbiguousSteadyStateError):
        steady_state(L, method="eigen", check_unique=True)


class TestExpectation:
    def test_identity(self):
        rho = steady_state(build_liouvillian(SMALL))
        assert expectation(rho, np.eye(SMALL.dim)).real == pytest.approx(1.0)

    def test_inversion_of_undriven_vacuum(self):
        p = ModelParams(g=40, kappa=1, gamma=2, eps_d=0, delta_omega=-28.0,
                        n_max=5)
        rho = steady_state(build_liouvillian(p))
        sz = composite_operators(5).sz
        assert expectation(rho, sz).real == pytest.approx(-1.0, abs=1e-10)

    def test_photon_number_consistent_with_occupations(self):
        # one solve, two routes: tr(rho a+a) vs sum_n n P_n
        rho = steady_state(build_liouvillian(SMALL))
        ops = composite_operators(SMALL.n_max)
        nbar = expectation(rho, ops.number).real
        occ = fock_occupations(partial_trace_atom(rho))
        assert nbar == pytest.approx(np.sum(occ * np.arange(occ.size)),
                                     abs=1e-12)

    def test_dim_mismatch(self):
        with pytest.raises(ValueError):
            expectation(np.eye(4), np.eye(6))


def test_unknown_method():
    L = build_liouvillian(SMALL)
    with pytest.raises(ValueError):
        steady_state(L, method="magic")
