from typing import Optional, Sequence
import numpy as np
from src.medium import LEVEL_INDEX, LEVELS, FieldSet, LevelScheme, Variant
from .models import ComplexRates, Relaxation


def field_detunings(scheme: LevelScheme, fields: FieldSet) -> tuple[float, float, float]:
    """Detunings nu_j - omega_j of fields 1-3 from the transitions they drive."""
    return tuple(fields.nu(j) - scheme.field_transition_frequency(j) for j in (1, 2, 3))


def level_detunings(variant: Variant, detunings: Sequence[float]) -> np.ndarray:
    """Rotating-frame energies of (a, b, c, d) relative to b, built from the detunings of fields 1-3.

    Along each driven transition eps_upper - eps_lower = -delta_j, so no optical
    frequency is ever subtracted from another.
    """
    s2, s3 = variant.closure_signs
    delta1, delta2, delta3 = detunings
    eps_a = -delta1
    eps_c = eps_a - s2 * delta2
    eps_d = eps_c - s3 * delta3
    return np.array([eps_a, 0.0, eps_c, eps_d])


def frame_detunings(scheme: LevelScheme, fields: FieldSet) -> np.ndarray:
    """Level energies in the frame rotating with the applied fields (rad/s)."""
    return level_detunings(scheme.variant, field_detunings(scheme, fields))


def coupling_matrix(variant: Variant, rabis) -> np.ndarray:
    """Hermitian dipole coupling: Omega_j at (upper, lower), conj(Omega_j) at (lower, upper)."""
    coupling = np.zeros((4, 4), dtype=complex)
    for j, (upper, lower) in variant.transitions.items():
        rabi = complex(rabis[j - 1])
        coupling[LEVEL_INDEX[upper], LEVEL_INDEX[lower]] += rabi
        coupling[LEVEL_INDEX[lower], LEVEL_INDEX[upper]] += rabi.conjugate()
    return coupling


def hamiltonian_from_rabis(detunings: np.ndarray, variant: Variant, rabis) -> np.ndarray:
    return np.diag(detunings).astype(complex) - coupling_matrix(variant, rabis)


def interaction_hamiltonian(scheme: LevelScheme, fields: FieldSet) -> np.ndarray:
    """Rotating-frame Hamiltonian divided by hbar, in rad/s.

    Each field contributes -hbar*Omega_j |upper><lower| + h.c.; the diagonal
    carries the detuning of each level from the rotating frame.
    """
    rabis = [fields.rabi(j) for j in (1, 2, 3, 4)]
    return hamiltonian_from_rabis(frame_detunings(scheme, fields), scheme.variant, rabis)


def complex_rates(scheme: LevelScheme, fields: FieldSet, field1_detuning: Optional[float] = None) -> ComplexRates:
    """Complex coherence rates; ``field1_detuning`` overrides the detuning of field 1."""
    detunings = field_detunings(scheme, fields)
    if field1_detuning is not None:
        detunings = (float(field1_detuning), *detunings[1:])
    eps = dict(zip(LEVELS, level_detunings(scheme.variant, detunings)))

    def rate(x: str, y: str) -> complex:
        return complex(scheme.coherence_decay(x, y), eps[x] - eps[y])

    return ComplexRates(
        gamma_ab=rate("a", "b"),
        gamma_ca=rate("c", "a"),
        gamma_cb=rate("c", "b"),
        gamma_db=rate("d", "b"),
    )


def relaxation_operator(scheme: LevelScheme) -> Relaxation:
    decay_matrix = np.zeros((4, 4))
    for x in LEVELS:
        for y in LEVELS:
            i, j = LEVEL_INDEX[x], LEVEL_INDEX[y]
            decay_matrix[i, j] = scheme.decay[x] if x == y else scheme.coherence_decay(x, y)

    repopulation = np.zeros((4, 4))
    if scheme.repopulation:
        for source in LEVELS:
            rate = scheme.decay[source]
            if rate == 0.0:
                continue
            for target, share in scheme.branching_ratios(source).items():
                repopulation[LEVEL_INDEX[target], LEVEL_INDEX[source]] += share * rate

    return Relaxation(
        decay_matrix=decay_matrix,
        repopulation=repopulation,
        repopulation_enabled=scheme.repopulation,
    )
