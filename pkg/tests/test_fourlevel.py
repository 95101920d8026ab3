import numpy as np
import pytest

from jcblockade import (
    DegenerateParametersError,
    ModelParams,
    bloch_solution,
    composite_operators,
    conditional_state,
    derive_params,
    dressed_states,
    evolve_effective,
    g2_analytic,
    g2_coefficients,
    g2_from_effective,
    quantum_beat_term,
    steady_occupations,
    truncated_operators,
)

SQRT2 = np.sqrt(2.0)


def params_for(eps_d, g=1000.0, gamma=2.0):
    return ModelParams(g=g, kappa=1.0, gamma=gamma, eps_d=eps_d,
                       delta_omega=-g / SQRT2)


class TestDeriveParams:
    def test_rabi_frequency_at_eps_60(self):
        fp = derive_params(params_for(60.0))
        # 2*sqrt(2) * 60^2/1000
        assert fp.rabi == pytest.approx(10.182337649086284, abs=1e-12)

    def test_cascade_rates_at_gamma_2kappa(self):
        fp = derive_params(params_for(40.0))
        assert fp.gamma31 == pytest.approx(2.0 + SQRT2, abs=1e-12)
        assert fp.gamma32 == pytest.approx(2.0 - SQRT2, abs=1e-12)
        assert fp.gamma_mid == pytest.approx(2.0, abs=0)

    def test_rate_sum_identity(self):
        # Gamma31 + Gamma32 = 2*gamma holds exactly at gamma = 2*kappa
        fp = derive_params(params_for(25.0))
        assert fp.gamma31 + fp.gamma32 == pytest.approx(2 * 2.0, abs=0)

    def test_beat_frequency(self):
        fp = derive_params(params_for(60.0))
        d0, d1, d2, d3 = fp.shifts
        assert d2 - d1 == pytest.approx((40.0 / 7.0) * 3.6, rel=1e-14)
        assert fp.beat_freq == pytest.approx(2000.0 + (40.0 / 7.0) * 3.6,
                                             rel=1e-14)


class TestTruncatedOperators:
    def test_excitation_operator_entries(self):
        a4, sm4 = truncated_operators()
        exc = sm4.conj().T @ sm4
        assert exc[1, 1] == pytest.approx(0.5)
        assert exc[2, 2] == pytest.approx(0.5)
        assert exc[1, 2] == pytest.approx(-0.5)
        assert exc[2, 1] == pytest.approx(-0.5)
        assert exc[3, 3] == pytest.approx(0.5)
        assert exc[0, 0] == 0.0

    def test_squared_lowering_by_matrix_product(self):
        # oracle: the two cascade paths |3> -> |1>,|2> -> |0> carry opposite
        # signs through sigma and cancel, so the direct matrix product is 0
        _, sm4 = truncated_operators()
        path_sum = (-1 / SQRT2) * (-0.5) + (1 / SQRT2) * (-0.5)
        assert path_sum == pytest.approx(0.0, abs=1e-16)
        np.testing.assert_allclose(sm4 @ sm4, np.zeros((4, 4)), atol=1e-16)

    def test_squared_annihilation_by_matrix_product(self):
        # same oracle for a: paths add to exactly |0><3|
        a4, _ = truncated_operators()
        expected = np.zeros((4, 4), complex)
        expected[0, 3] = (1 / SQRT2) * 0.5 * ((SQRT2 + 1) + (SQRT2 - 1))
        np.testing.assert_allclose(a4 @ a4, expected, atol=1e-15)
        assert expected[0, 3] == pytest.approx(1.0)

    def test_projection_onto_dressed_states(self):
        # embedding the dressed states in the full space and sandwiching the
        # full operators must reproduce the truncated matrices
        n_max = 6
        kets = np.column_stack(dressed_states(n_max))
        ops = composite_operators(n_max)
        a4, sm4 = truncated_operators()
        np.testing.assert_allclose(kets.conj().T @ ops.sm @ kets, sm4,
                                   atol=1e-12)
        np.testing.assert_allclose(kets.conj().T @ ops.a @ kets, a4,
                                   atol=1e-12)


class TestSteadyOccupations:
    def test_strong_drive_excitation_limit(self):
        with pytest.warns():  # deliberately outside the perturbative regime
            p = params_for(eps_d=90.0, g=100.0)  # Omega >> gamma
        assert steady_occupations(derive_params(p))[4] == pytest.approx(
            3.0 / 8.0, abs=1e-3)

    def test_weak_drive_empties_excited_levels(self):
        fp = derive_params(params_for(eps_d=0.1))
        p0, p1, p2, p3, exc = steady_occupations(fp)
        assert p0 == pytest.approx(1.0, abs=1e-6)
        assert max(p1, p2, p3, exc) < 1e-6

    def test_branching_ratio(self):
        fp = derive_params(params_for(30.0))
        p0, p1, p2, p3, _ = steady_occupations(fp)
        assert p1 / p2 == pytest.approx(3.0 + 2.0 * SQRT2, rel=1e-12)
        assert p0 + p1 + p2 + p3 == pytest.approx(1.0, abs=1e-14)
        assert all(0.0 <= x <= 1.0 for x in (p0, p1, p2, p3))


class TestConditionalState:
    def test_entries(self):
        rho = conditional_state()
        assert np.trace(rho).real == pytest.approx(1.0, abs=1e-15)
        assert rho[0, 0] == pytest.approx(2.0 / 3.0)
        for i, j in [(1, 1), (2, 2), (1, 2), (2, 1)]:
            assert rho[i, j] == pytest.approx(1.0 / 6.0)

    def test_drive_independent(self):
        np.testing.assert_array_equal(conditional_state(), conditional_state())


class TestEvolveEffective:
    def test_undriven_ground_state_stationary(self):
        fp = derive_params(ModelParams(g=1000, kappa=1, gamma=2, eps_d=0,
                                       delta_omega=-707.0))
        rho0 = np.zeros((4, 4), complex)
        rho0[0, 0] = 1.0
        states = evolve_effective(fp, rho0, np.linspace(0, 5, 20))
        np.testing.assert_allclose(states[-1], rho0, atol=1e-12)

    def test_beat_coherence_decouples(self):
        # rho_12(tau) = (1/6) e^{-Gamma tau} e^{+i nu tau}
        fp = derive_params(params_for(40.0))
        tau = np.linspace(0.0, 1.5, 300)
        states = evolve_effective(fp, conditional_state(), tau)
        expected = (1.0 / 6.0) * np.exp(-fp.gamma_mid * tau) * np.exp(
            1j * fp.beat_freq * tau)
        np.testing.assert_allclose(states[:, 0, 1], 0.0, atol=1e-12)
        np.testing.assert_allclose(states[:, 1, 2], expected, atol=1e-10)

    @pytest.mark.parametrize("eps_d", [17.77, 26.59, 59.46])
    def test_populations_match_bloch_closed_form(self, eps_d):
        # gamma/Omega spans {~2.2, ~1, ~0.2}; closed-form matrix-exponential
        # oracle for the u' = M u + B system
        fp = derive_params(params_for(eps_d))
        tau = np.linspace(0.0, 4.0, 160)
        states = evolve_effective(fp, conditional_state(), tau)
        sigma, rho33, s = bloch_solution(fp, tau)
        np.testing.assert_allclose(
            states[:, 3, 3].real - states[:, 0, 0].real, sigma, atol=1e-8)
        np.testing.assert_allclose(states[:, 3, 3].real, rho33, atol=1e-8)
        np.testing.assert_allclose(
            states[:, 1, 1].real + states[:, 2, 2].real, s, atol=1e-8)


class TestBlochSolution:
    def test_initial_inversion(self):
        fp = derive_params(params_for(40.0))
        sigma, rho33, s = bloch_solution(fp, np.array([0.0, 1.0]))
        assert sigma[0] == pytest.approx(-2.0 / 3.0, abs=1e-12)
        assert s[0] == pytest.approx(1.0 / 3.0, abs=1e-12)

    def test_long_time_limit_matches_steady_occupations(self):
        fp = derive_params(params_for(40.0))
        sigma, rho33, s = bloch_solution(fp, np.array([0.0, 50.0]))
        p0, p1, p2, p3, _ = steady_occupations(fp)
        assert sigma[-1] == pytest.approx(p3 - p0, abs=1e-10)
        assert rho33[-1] == pytest.approx(p3, abs=1e-10)
        assert s[-1] == pytest.approx(p1 + p2, abs=1e-10)

    def test_undamped_rabi_at_zero_gamma(self):
        p = ModelParams(g=1000, kappa=1, gamma=0, eps_d=40,
                        delta_omega=-707.0)
        fp = derive_params(p)
        tau = np.linspace(0.0, 3.0, 500)
        sigma, _, _ = bloch_solution(fp, tau)
        np.testing.assert_allclose(
            sigma, -(2.0 / 3.0) * np.cos(2 * fp.rabi * tau), atol=1e-10)

    def test_degenerate_parameters(self):
        fp = derive_params(ModelParams(g=1000, kappa=1, gamma=0, eps_d=0,
                                       delta_omega=-707.0))
        with pytest.raises(DegenerateParametersError):
            bloch_solution(fp, np.array([0.0, 1.0]))


class TestG2Analytic:
    def test_zero_delay_exact(self):
        fp = derive_params(params_for(20.0))
        c = g2_coefficients(fp)
        assert 1.0 + c.c1 + c.c3 + c.c4 == 0.0  # exact by construction
        assert c.c3 == -1.0 / 9.0
        assert g2_analytic(fp, np.array([0.0, 1.0])).values[0] == 0.0

    def test_coefficient_values(self):
        fp = derive_params(params_for(60.0))
        om2 = fp.rabi ** 2
        c = g2_coefficients(fp)
        assert c.c1 == pytest.approx((4.0 - 4.0 * om2) / (9.0 * om2), rel=1e-12)
        assert c.c2 == pytest.approx(-10.0 / (9.0 * fp.rabi), rel=1e-12)
        assert c.c4 == pytest.approx(-(4.0 + 4.0 * om2) / (9.0 * om2), rel=1e-12)

    def test_weak_excitation_limit(self):
        # gamma^2 >> Omega^2 and gamma*tau >~ 1:
        # g2 -> 1 + (gamma^2 / 9 Omega^2) e^{-gamma tau} (1 - cos(nu tau))
        p = params_for(eps_d=3.77)  # Omega ~ gamma/50
        fp = derive_params(p)
        tau = np.linspace(1.0 / fp.gamma, 3.0 / fp.gamma, 400)
        full = g2_analytic(fp, np.concatenate([[0.0], tau])).values[1:]
        limit = 1.0 + (fp.gamma ** 2 / (9 * fp.rabi ** 2)) * np.exp(
            -fp.gamma * tau) * (1.0 - np.cos(fp.beat_freq * tau))
        scale = np.max(np.abs(limit - 1.0))
        assert np.max(np.abs(full - limit)) < 0.02 * scale

    @pytest.mark.filterwarnings("ignore::jcblockade.RegimeWarning")
    def test_strong_excitation_limit(self):
        # Omega^2 >> gamma^2:
        # g2 -> 1 - (1/9) e^{-gamma tau}[4 cos(2 Om tau) + e^{-gamma tau} + 4 cos(nu tau)]
        p = ModelParams(g=100, kappa=1, gamma=2, eps_d=59.5,
                        delta_omega=-70.7)  # Omega ~ 100 >> gamma
        fp = derive_params(p)
        tau = np.linspace(0.0, 2.0, 1000)
        full = g2_analytic(fp, tau).values
        damp = np.exp(-fp.gamma * tau)
        limit = 1.0 - (1.0 / 9.0) * damp * (
            4.0 * np.cos(2 * fp.rabi * tau) + damp
            + 4.0 * np.cos(fp.beat_freq * tau))
        assert np.max(np.abs(full - limit)) < 0.02

    def test_no_beat_flag_drops_c4_term(self):
        fp = derive_params(params_for(60.0))
        tau = np.linspace(0.0, 2.0, 500)
        diff = (g2_analytic(fp, tau).values
                - g2_analytic(fp, tau, include_beat=False).values)
        np.testing.assert_allclose(diff, quantum_beat_term(fp, tau) * np.exp(0),
                                   atol=1e-12)

    def test_negative_tau_symmetry(self):
        fp = derive_params(params_for(40.0))
        tau = np.array([0.0, 0.3, 0.9])
        vals = g2_analytic(fp, tau).values
        # evaluate through the |tau| form directly
        pos = 1.0 + np.exp(-fp.gamma * tau) * (
            g2_coefficients(fp).c1 * np.cos(2 * fp.rabi * tau)
            + g2_coefficients(fp).c2 * np.sin(2 * fp.rabi * tau)
            + g2_coefficients(fp).c3 * np.exp(-fp.gamma * tau)
            + g2_coefficients(fp).c4 * np.cos(fp.beat_freq * tau))
        np.testing.assert_allclose(vals, pos, atol=1e-14)


class TestQuantumBeat:
    def test_zero_delay_amplitude(self):
        fp = derive_params(params_for(60.0))
        assert quantum_beat_term(fp, 0.0) == pytest.approx(
            g2_coefficients(fp).c4)

    def test_zero_crossings_spacing(self):
        fp = derive_params(params_for(60.0))
        tau = np.linspace(0.0, 0.02, 40001)
        vals = quantum_beat_term(fp, tau)
        crossings = tau[:-1][np.diff(np.sign(vals)) != 0]
        spacing = np.diff(crossings)
        np.testing.assert_allclose(spacing, np.pi / fp.beat_freq, rtol=1e-3)

    @pytest.mark.filterwarnings("ignore::jcblockade.RegimeWarning")
    def test_strong_drive_amplitude(self):
        fp = derive_params(ModelParams(g=100, kappa=1, gamma=2, eps_d=59.5,
                                       delta_omega=-70.7))
        assert quantum_beat_term(fp, 0.0) == pytest.approx(-4.0 / 9.0,
                                                           abs=1e-3)


def test_effective_g2_reproduces_closed_form():
    # integrating the cascade master equation and assembling g2 from its
    # populations must reproduce the closed form at gamma = 2*kappa
    for eps_d in (17.77, 26.59, 59.46):
        fp = derive_params(params_for(eps_d))
        tau = np.linspace(0.0, 3.0, 400)
        num = g2_from_effective(fp, tau).values
        ana = g2_analytic(fp, tau).values
        assert np.max(np.abs(num - ana)) < 1e-8


def test_beat_frequency_matches_fft_of_beat_term():
    fp = derive_params(params_for(60.0))
    dt = 2 * np.pi / fp.beat_freq / 40.0
    tau = np.arange(0.0, 6.0, dt)
    vals = quantum_beat_term(fp, tau)
    freqs = np.fft.rfftfreq(tau.size, dt) * 2 * np.pi
    spec = np.abs(np.fft.rfft(vals))
    assert abs(freqs[np.argmax(spec)] - fp.beat_freq) < freqs[1]
