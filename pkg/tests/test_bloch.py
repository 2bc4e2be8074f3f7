import math

import numpy as np
import pytest

from conftest import GAMMA, make_config
from src.bloch import (
    DegenerateSteadyStateError,
    DensityMatrix,
    IntegratorError,
    complex_rates,
    evolve,
    frame_detunings,
    grating_conjugation,
    interaction_hamiltonian,
    level_detunings,
    liouvillian,
    master_equation_rhs,
    relaxation_operator,
    signal_polarization,
    solve_steady_state,
    steady_state,
    weak_probe_coherence,
)
from src.medium import LEVEL_INDEX, LEVELS, InvalidParameterError, SingularityError, Variant, build_scheme, level_phases

VARIANTS = ["double_lambda", "ladder_lambda", "v_lambda"]
A, B, C, D = (LEVEL_INDEX[level] for level in "abcd")


def random_hermitian(rng: np.random.Generator) -> np.ndarray:
    m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    rho = m @ m.conj().T
    return rho / np.trace(rho)


class TestDensityMatrix:
    def test_pure_ground_state(self):
        rho = DensityMatrix.pure("b")
        assert rho.population("b") == 1.0
        assert rho.trace == 1.0
        assert rho.is_physical()

    def test_read_only(self):
        rho = DensityMatrix.pure()
        with pytest.raises(ValueError):
            rho.matrix[0, 0] = 1.0

    def test_shape_checked(self):
        with pytest.raises(ValueError, match="4x4"):
            DensityMatrix(np.eye(3))

    def test_non_hermitian_not_physical(self):
        matrix = np.diag([0.0, 1.0, 0.0, 0.0]).astype(complex)
        matrix[0, 1] = 0.1
        assert not DensityMatrix(matrix).is_physical()


class TestHamiltonian:
    def test_hermitian(self, dl_scheme):
        scheme, fields, _ = dl_scheme
        h = interaction_hamiltonian(scheme, fields.with_rabis((1 + 2j, 3 - 1j, 0.5j, 0.2)))
        np.testing.assert_array_equal(h, h.conj().T)

    def test_fields_off_no_coupling(self, dl_scheme):
        scheme, fields, _ = dl_scheme
        h = interaction_hamiltonian(scheme, fields.with_rabis((0, 0, 0, 0)))
        np.testing.assert_array_equal(h - np.diag(np.diag(h)), np.zeros((4, 4)))

    def test_lambda_block_matches_three_level(self):
        scheme, fields, _ = build_scheme(make_config(detunings=(2e6, -1e6, 0.0)))
        omega1, omega2 = 3e5 + 1e5j, 2e7
        h = interaction_hamiltonian(scheme, fields.with_rabis((omega1, omega2, 0, 0)))
        delta1 = fields.nu(1) - scheme.omega_ab
        delta2 = fields.nu(2) - scheme.omega_ac
        expected = np.array([
            [-delta1, -omega1, -omega2],
            [-np.conj(omega1), 0.0, 0.0],
            [-np.conj(omega2), 0.0, -(delta1 - delta2)],
        ])
        block = h[np.ix_([A, B, C], [A, B, C])]
        np.testing.assert_allclose(block, expected, atol=2.0)

    @pytest.mark.parametrize("variant", VARIANTS)
    def test_complex_rates_real_parts(self, variant):
        scheme, fields, _ = build_scheme(make_config(variant, detunings=(1e6, 2e6, -3e6)))
        rates = complex_rates(scheme, fields)
        assert rates.gamma_ab.real == pytest.approx(GAMMA / 2)
        assert rates.gamma_cb.real == pytest.approx(0.1 * GAMMA)
        assert rates.gamma_ab.imag == pytest.approx(-1e6, abs=2.0)
        for rate in (rates.gamma_ab, rates.gamma_ca, rates.gamma_cb, rates.gamma_db):
            assert rate.real >= 0

    @pytest.mark.parametrize("variant,expected", [
        ("double_lambda", [-1.0, 0.0, 1.0, -2.0]),
        ("ladder_lambda", [-1.0, 0.0, 1.0, 4.0]),
        ("v_lambda", [-1.0, 0.0, -3.0, 0.0]),
    ])
    def test_level_detunings(self, variant, expected):
        energies = level_detunings(Variant(variant), (1.0, 2.0, 3.0))
        np.testing.assert_array_equal(energies, expected)

    @pytest.mark.parametrize("variant", VARIANTS)
    def test_frame_matches_level_energies(self, variant):
        scheme, fields, _ = build_scheme(make_config(variant, detunings=(0.3 * GAMMA, -0.2 * GAMMA, 0.1 * GAMMA)))
        phases = level_phases(scheme.variant, fields.nu(1), fields.nu(2), fields.nu(3))
        absolute = np.array([scheme.energies[level] - phases[level] for level in LEVELS])
        np.testing.assert_allclose(frame_detunings(scheme, fields), absolute - absolute[B], atol=16.0)

    @pytest.mark.parametrize("delta", [0.0, 0.3, -0.75, 1.25e6])
    def test_detuning_resolved_below_float_spacing(self, dl_scheme, delta):
        # optical frequencies are spaced ~0.5 rad/s apart in float64
        scheme, fields, _ = dl_scheme
        rates = complex_rates(scheme, fields, field1_detuning=delta)
        assert rates.gamma_ab.imag == -delta
        assert rates.gamma_cb.imag == -delta
        assert rates.gamma_ab.real == complex_rates(scheme, fields).gamma_ab.real


class TestMasterEquation:
    def test_dark_ground_state(self, dl_scheme):
        scheme, fields, _ = dl_scheme
        off = fields.with_rabis((0, 0, 0, 0))
        drho = master_equation_rhs(DensityMatrix.pure("b"), interaction_hamiltonian(scheme, off),
                                   relaxation_operator(scheme))
        np.testing.assert_allclose(drho, 0.0, atol=1e-12)

    def test_trace_and_hermiticity_preserved(self, dl_scheme):
        scheme, fields, _ = dl_scheme
        rng = np.random.default_rng(7)
        h = interaction_hamiltonian(scheme, fields.with_rabis((GAMMA, 0.5 * GAMMA, 0.3j * GAMMA, 0.1 * GAMMA)))
        relaxation = relaxation_operator(scheme)
        for _ in range(20):
            drho = master_equation_rhs(random_hermitian(rng), h, relaxation)
            assert abs(np.trace(drho)) <= 1e-12 * GAMMA * 10
            np.testing.assert_allclose(drho, drho.conj().T, atol=1e-6)

    def test_two_level_optical_bloch(self):
        scheme, fields, _ = build_scheme(make_config(detunings=(5e6, 0, 0)))
        omega = 4e6 + 2e6j
        h = interaction_hamiltonian(scheme, fields.with_rabis((omega, 0, 0, 0)))
        relaxation = relaxation_operator(scheme)
        rng = np.random.default_rng(3)
        rho = np.zeros((4, 4), dtype=complex)
        sub = random_hermitian(rng)[:2, :2]
        rho[np.ix_([A, B], [A, B])] = sub / np.trace(sub)
        drho = master_equation_rhs(rho, h, relaxation)

        # textbook two-level equations with detuning Delta = nu - omega
        delta = fields.nu(1) - scheme.omega_ab
        gamma_a, gamma_ab = GAMMA, GAMMA / 2
        rho_aa, rho_ab, rho_bb = rho[A, A], rho[A, B], rho[B, B]
        expected_aa = -gamma_a * rho_aa + 1j * (omega * np.conj(rho_ab) - np.conj(omega) * rho_ab)
        expected_ab = -(gamma_ab - 1j * delta) * rho_ab + 1j * omega * (rho_bb - rho_aa)
        assert drho[A, A] == pytest.approx(expected_aa, rel=1e-10, abs=1e-3)
        assert drho[A, B] == pytest.approx(expected_ab, rel=1e-10, abs=1e-3)
        assert drho[B, B] == pytest.approx(-expected_aa, rel=1e-10, abs=1e-3)

    def test_liouvillian_matches_rhs(self, dl_scheme):
        scheme, fields, _ = dl_scheme
        h = interaction_hamiltonian(scheme, fields.with_rabis((GAMMA, GAMMA, 0.2 * GAMMA, 0.1 * GAMMA)))
        relaxation = relaxation_operator(scheme)
        rho = random_hermitian(np.random.default_rng(11))
        np.testing.assert_allclose(
            liouvillian(h, relaxation) @ rho.reshape(-1),
            master_equation_rhs(rho, h, relaxation).reshape(-1),
            rtol=1e-12, atol=1e-3,
        )


class TestSteadyState:
    def test_fields_off_ground_state(self, dl_scheme):
        scheme, fields, medium = dl_scheme
        rho = steady_state(scheme, fields.with_rabis((0, 0, 0, 0)), medium)
        expected = DensityMatrix.pure("b").matrix
        np.testing.assert_allclose(rho.matrix, expected, atol=1e-12)

    def test_ground_population_weak_probe(self, dl_scheme):
        scheme, fields, medium = dl_scheme
        rho = steady_state(scheme, fields, medium)
        assert rho.population("b") == pytest.approx(1.0, abs=1e-6)

    @pytest.mark.parametrize("variant", VARIANTS)
    def test_physical_for_random_parameters(self, variant):
        rng = np.random.default_rng(2024)
        for _ in range(10):
            rabis = rng.uniform(0.0, 2.0, size=4) * GAMMA * np.exp(1j * rng.uniform(0, 2 * math.pi, size=4))
            detunings = rng.uniform(-2.0, 2.0, size=3) * GAMMA
            scheme, fields, _ = build_scheme(make_config(variant, rabis=tuple(rabis), detunings=tuple(detunings)))
            rho = steady_state(scheme, fields)
            assert rho.is_physical(), rho.matrix

    @pytest.mark.parametrize("variant", VARIANTS)
    def test_oracle_weak_probe(self, variant):
        rng = np.random.default_rng(99)
        for _ in range(5):
            omega2 = GAMMA * rng.uniform(0.5, 2.0) * np.exp(1j * rng.uniform(0, 2 * math.pi))
            omega1 = 1e-4 * abs(omega2) * np.exp(1j * rng.uniform(0, 2 * math.pi))
            omega3 = 1e-4 * GAMMA * np.exp(1j * rng.uniform(0, 2 * math.pi))
            detunings = tuple(rng.uniform(-1.0, 1.0, size=3) * GAMMA)
            scheme, fields, _ = build_scheme(
                make_config(variant, rabis=(omega1, omega2, omega3, 0.0), detunings=detunings)
            )
            rho = steady_state(scheme, fields)
            rates = complex_rates(scheme, fields)
            conj_coupling, conj_reader = grating_conjugation(scheme.variant)
            rho_ab, rho_cb = weak_probe_coherence(omega1, omega2, rates.gamma_ab, rates.gamma_cb, conj_coupling)
            rho_db = signal_polarization(omega3, 0j, rho_cb, rates.gamma_db, conj_reader)

            assert rho.rho_ab == pytest.approx(rho_ab, rel=1e-6)
            assert rho.rho_cb == pytest.approx(rho_cb, rel=1e-6)
            assert rho.rho_db == pytest.approx(rho_db, rel=1e-4)

    def test_linear_in_probe(self, dl_scheme):
        scheme, fields, _ = dl_scheme
        base = steady_state(scheme, fields).rho_cb
        factor = 0.5 - 0.5j
        scaled = steady_state(scheme, fields.with_field(1, rabi=fields.rabi(1) * factor)).rho_cb
        assert scaled == pytest.approx(base * factor, rel=1e-6)

    def test_detuning_parity(self):
        # lossless ground coherence, coupling on resonance
        def rho_ab(delta):
            return weak_probe_coherence(1e-4 * GAMMA, GAMMA, complex(GAMMA / 2, -delta), complex(0.0, -delta))[0]

        for delta in (1e5, 3e6, 4e7):
            plus, minus = rho_ab(delta), rho_ab(-delta)
            assert plus.real == pytest.approx(-minus.real, rel=1e-9)
            assert plus.imag == pytest.approx(minus.imag, rel=1e-9, abs=1e-20)

    def test_degenerate_without_relaxation(self):
        raw = make_config(rabis=(0, 0, 0, 0), detunings=(1e6, 0, 0), decay={}, dephasing={})
        scheme, fields, _ = build_scheme(raw)
        with pytest.raises(DegenerateSteadyStateError) as exc_info:
            steady_state(scheme, fields)
        assert exc_info.value.null_space_dimension >= 4
        assert exc_info.value.exit_code == 4

    def test_no_repopulation_has_no_normalized_state(self):
        raw = make_config(rabis=(0.5 * GAMMA, GAMMA, 0.1 * GAMMA, 0.0))
        raw["scheme"]["repopulation"] = False
        scheme, fields, _ = build_scheme(raw)
        with pytest.raises(DegenerateSteadyStateError, match="repopulated"):
            steady_state(scheme, fields)

    def test_branching_to_c(self, dl_config):
        dl_config["scheme"]["branching"] = {"a": {"b": 0.5, "c": 0.5}}
        scheme, fields, _ = build_scheme(dl_config)
        rho = steady_state(scheme, fields.with_rabis((0.5 * GAMMA, 0, 0, 0)))
        assert rho.is_physical()
        assert rho.population("c") > 0.0


class TestEvolve:
    def test_zero_duration(self, dl_scheme):
        scheme, fields, _ = dl_scheme
        rho0 = DensityMatrix.pure("b")
        assert evolve(rho0, scheme, fields, 0.0, 1e-9) is rho0

    @pytest.mark.parametrize("duration,dt", [(-1.0, 1e-9), (1e-6, 0.0)])
    def test_invalid_arguments(self, dl_scheme, duration, dt):
        scheme, fields, _ = dl_scheme
        with pytest.raises(InvalidParameterError):
            evolve(DensityMatrix.pure(), scheme, fields, duration, dt)

    def test_spontaneous_decay(self, dl_scheme):
        scheme, fields, _ = dl_scheme
        off = fields.with_rabis((0, 0, 0, 0))
        for t in (1e-8, 3e-8, 6e-8):
            rho = evolve(DensityMatrix.pure("a"), scheme, off, t, 1e-10)
            assert rho.population("a") == pytest.approx(math.exp(-GAMMA * t), rel=1e-6)
            assert rho.trace == pytest.approx(1.0, abs=1e-8)

    @pytest.mark.parametrize("delta", [0.0, 1e6, -2.5e6])
    def test_rabi_oscillation(self, delta):
        omega = 1e6
        raw = make_config(rabis=(omega, 0, 0, 0), detunings=(delta, 0, 0), decay={}, dephasing={})
        scheme, fields, _ = build_scheme(raw)
        generalized = math.sqrt(omega**2 + delta**2 / 4)
        for t in (0.7e-6, 1.3e-6, 2.0e-6):
            rho = evolve(DensityMatrix.pure("b"), scheme, fields, t, 1e-9)
            expected = omega**2 / generalized**2 * math.sin(generalized * t) ** 2
            assert rho.population("a") == pytest.approx(expected, rel=1e-6, abs=1e-9)

    def test_long_time_matches_steady_state(self):
        raw = make_config(rabis=(0.3 * GAMMA, 0.8 * GAMMA, 0.1 * GAMMA, 0.0), detunings=(0.2 * GAMMA, -0.1 * GAMMA, 0.0),
                          decay={"a": GAMMA, "c": GAMMA, "d": GAMMA}, dephasing={"bc": GAMMA})
        scheme, fields, _ = build_scheme(raw)
        target = steady_state(scheme, fields)
        generator = liouvillian(interaction_hamiltonian(scheme, fields), relaxation_operator(scheme))
        gap = np.sort(-np.linalg.eigvals(generator).real)[1]
        rho = evolve(DensityMatrix.pure("b"), scheme, fields, 40.0 / gap, 0.02 / GAMMA)
        np.testing.assert_allclose(rho.matrix, target.matrix, atol=1e-8)

    def test_large_step_warns(self, dl_scheme, caplog):
        scheme, fields, _ = dl_scheme
        with caplog.at_level("WARNING"):
            evolve(DensityMatrix.pure("b"), scheme, fields, 1e-8, 1e-8)
        assert "Time step is large" in caplog.text

    def test_blow_up_raises(self, dl_scheme):
        scheme, fields, _ = dl_scheme
        with pytest.raises(IntegratorError, match="reduce dt"):
            evolve(DensityMatrix.pure("b"), scheme, fields, 1e-5, 1e-6)


def weak_field_config(rng: np.random.Generator, variant: str) -> dict:
    omega2 = GAMMA * rng.uniform(0.5, 2.0) * np.exp(1j * rng.uniform(0, 2 * math.pi))
    omega1 = 1e-4 * abs(omega2) * np.exp(1j * rng.uniform(0, 2 * math.pi))
    omega3 = 1e-4 * GAMMA * np.exp(1j * rng.uniform(0, 2 * math.pi))
    detunings = tuple(rng.uniform(-1.0, 1.0, size=3) * GAMMA)
    return make_config(variant, rabis=(omega1, omega2, omega3, 0.0), detunings=detunings)


class TestWeakFieldAgreement:
    """Closed form, Liouvillian null space and long-time evolution agree for weak fields 1 and 3."""

    SETS_PER_VARIANT = 34

    @pytest.mark.parametrize("variant", VARIANTS)
    def test_closed_form_matches_null_space(self, variant):
        rng = np.random.default_rng(2024 + VARIANTS.index(variant))
        for _ in range(self.SETS_PER_VARIANT):
            scheme, fields, _ = build_scheme(weak_field_config(rng, variant))
            rho = steady_state(scheme, fields)
            rates = complex_rates(scheme, fields)
            conj_coupling, _ = grating_conjugation(scheme.variant)
            rho_ab, rho_cb = weak_probe_coherence(
                fields.rabi(1), fields.rabi(2), rates.gamma_ab, rates.gamma_cb, conj_coupling
            )
            assert rho.rho_ab == pytest.approx(rho_ab, rel=1e-6)
            assert rho.rho_cb == pytest.approx(rho_cb, rel=1e-6)

    @pytest.mark.parametrize("variant", VARIANTS)
    def test_evolution_settles_on_closed_form(self, variant):
        rng = np.random.default_rng(7 + VARIANTS.index(variant))
        scheme, fields, _ = build_scheme(weak_field_config(rng, variant))
        generator = liouvillian(interaction_hamiltonian(scheme, fields), relaxation_operator(scheme))
        gap = np.sort(-np.linalg.eigvals(generator).real)[1]
        rho = evolve(DensityMatrix.pure("b"), scheme, fields, 40.0 / gap, 0.02 / GAMMA)

        rates = complex_rates(scheme, fields)
        conj_coupling, _ = grating_conjugation(scheme.variant)
        rho_ab, rho_cb = weak_probe_coherence(
            fields.rabi(1), fields.rabi(2), rates.gamma_ab, rates.gamma_cb, conj_coupling
        )
        assert rho.rho_ab == pytest.approx(rho_ab, rel=1e-6)
        assert rho.rho_cb == pytest.approx(rho_cb, rel=1e-6)
        assert rho.rho_ab == pytest.approx(steady_state(scheme, fields).rho_ab, rel=1e-6)


class TestAnalytic:
    def test_zero_probe(self):
        assert weak_probe_coherence(0j, 1e7, 1e6 + 2e5j, 1e3) == (0j, 0j)

    def test_grating_proportional_to_probe(self):
        a = 0.3 - 1.7j
        _, base = weak_probe_coherence(1e3 + 0j, 1e7 + 2e6j, 1e6, 1e3)
        _, scaled = weak_probe_coherence(a * 1e3, 1e7 + 2e6j, 1e6, 1e3)
        assert scaled == pytest.approx(a * base, rel=1e-14)

    def test_grating_limiting_form(self):
        omega1, omega2 = 1e3 + 1e2j, 1e7 - 3e6j
        _, rho_cb = weak_probe_coherence(omega1, omega2, 1e6, 0.0)
        assert rho_cb == pytest.approx(-omega1 * np.conj(omega2) / abs(omega2) ** 2, rel=1e-14)

    def test_singular_denominator(self):
        with pytest.raises(SingularityError):
            weak_probe_coherence(1.0, 0.0, 1e6, 0.0)

    def test_signal_polarization(self):
        assert signal_polarization(1e3, 0j, 0j, 1e6) == 0j
        rho_cb = 1e-4 - 2e-4j
        omega3 = 2e3 + 1e3j
        gamma_db = 1e6 - 5e5j
        assert signal_polarization(omega3, 0j, rho_cb, gamma_db) == pytest.approx(1j * rho_cb * omega3 / gamma_db)
        assert signal_polarization(omega3, 0j, rho_cb, gamma_db, conjugate_probe=True) == pytest.approx(
            1j * rho_cb * np.conj(omega3) / gamma_db
        )
        with pytest.raises(SingularityError):
            signal_polarization(omega3, 0j, rho_cb, 0j)

    @pytest.mark.parametrize("variant,expected", [
        (Variant.DOUBLE_LAMBDA, (True, False)),
        (Variant.LADDER_LAMBDA, (True, True)),
        (Variant.V_LAMBDA, (False, True)),
    ])
    def test_grating_conjugation(self, variant, expected):
        assert grating_conjugation(variant) == expected


class TestSolveSteadyState:
    def test_zero_generator(self):
        relaxation = relaxation_operator(build_scheme(make_config(decay={}, dephasing={}))[0])
        with pytest.raises(DegenerateSteadyStateError, match="vanishes"):
            solve_steady_state(np.zeros((4, 4), dtype=complex), relaxation)
