from .analytic import grating_conjugation, signal_polarization, weak_probe_coherence
from .hamiltonian import (
    complex_rates,
    coupling_matrix,
    field_detunings,
    frame_detunings,
    hamiltonian_from_rabis,
    interaction_hamiltonian,
    level_detunings,
    relaxation_operator,
)
from .models import ComplexRates, DegenerateSteadyStateError, DensityMatrix, IntegratorError, Relaxation
from .solver import evolve, liouvillian, master_equation_rhs, solve_steady_state, steady_state

__all__ = [
    "grating_conjugation",
    "signal_polarization",
    "weak_probe_coherence",
    "complex_rates",
    "coupling_matrix",
    "field_detunings",
    "frame_detunings",
    "hamiltonian_from_rabis",
    "interaction_hamiltonian",
    "level_detunings",
    "relaxation_operator",
    "ComplexRates",
    "DegenerateSteadyStateError",
    "DensityMatrix",
    "IntegratorError",
    "Relaxation",
    "evolve",
    "liouvillian",
    "master_equation_rhs",
    "solve_steady_state",
    "steady_state",
]
