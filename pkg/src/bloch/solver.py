import math
from typing import Union
import numpy as np
from scipy import linalg
from src.config import config
from src.medium import LEVEL_INDEX, FieldSet, InvalidParameterError, LevelScheme, MediumParams
from src.utils import logger
from .hamiltonian import interaction_hamiltonian, relaxation_operator
from .models import DegenerateSteadyStateError, DensityMatrix, IntegratorError, Relaxation

RESIDUAL_RTOL = 1e-10
RANK_RCOND = 1e-12
BLOWUP_NORM = 1e3

_TRACE_INDICES = [5 * i for i in range(4)]
_REPLACED_ROW = 5 * LEVEL_INDEX["b"]


def master_equation_rhs(
    rho: Union[DensityMatrix, np.ndarray], hamiltonian: np.ndarray, relaxation: Relaxation
) -> np.ndarray:
    """d(rho)/dt = -i[H, rho] - decay + repopulation, with H in rad/s."""
    rho = rho.matrix if isinstance(rho, DensityMatrix) else rho
    drho = -1j * (hamiltonian @ rho - rho @ hamiltonian)
    drho -= relaxation.decay_matrix * rho
    if relaxation.repopulation_enabled:
        drho += np.diag(relaxation.repopulation @ np.diag(rho))
    return drho


def liouvillian(hamiltonian: np.ndarray, relaxation: Relaxation) -> np.ndarray:
    """16x16 generator acting on row-major vec(rho)."""
    identity = np.eye(4)
    generator = -1j * (np.kron(hamiltonian, identity) - np.kron(identity, hamiltonian.T))
    generator -= np.diag(relaxation.decay_matrix.reshape(-1))
    if relaxation.repopulation_enabled:
        for target in range(4):
            for source in range(4):
                generator[5 * target, 5 * source] += relaxation.repopulation[target, source]
    return generator


def solve_steady_state(hamiltonian: np.ndarray, relaxation: Relaxation) -> DensityMatrix:
    generator = liouvillian(hamiltonian, relaxation)
    scale = float(np.max(np.abs(generator)))
    if scale == 0.0:
        raise DegenerateSteadyStateError("Liouvillian vanishes identically; every state is stationary", 4)
    generator = generator / scale

    system = generator.copy()
    system[_REPLACED_ROW, :] = 0.0
    system[_REPLACED_ROW, _TRACE_INDICES] = 1.0
    rhs = np.zeros(16, dtype=complex)
    rhs[_REPLACED_ROW] = 1.0

    singular_values = linalg.svdvals(system)
    if singular_values[-1] <= RANK_RCOND * singular_values[0]:
        null_dim = linalg.null_space(generator, rcond=RANK_RCOND).shape[1]
        raise DegenerateSteadyStateError(
            f"steady state is not unique: Liouvillian null space has dimension {null_dim}", null_dim
        )

    vec = linalg.solve(system, rhs)
    residual = float(np.linalg.norm(generator @ vec))
    if residual > RESIDUAL_RTOL * float(np.linalg.norm(generator)):
        null_dim = linalg.null_space(generator, rcond=RANK_RCOND).shape[1]
        raise DegenerateSteadyStateError(
            f"no trace-preserving steady state (residual {residual:.3e}); "
            f"check that decayed population is repopulated",
            null_dim,
        )

    rho = vec.reshape(4, 4)
    return DensityMatrix(0.5 * (rho + rho.conj().T))


def steady_state(scheme: LevelScheme, fields: FieldSet, medium: MediumParams | None = None) -> DensityMatrix:
    """Stationary density matrix of one atom in the given fields.

    The medium does not enter the single-atom problem; it is accepted so the
    call matches the propagation and planning entry points.
    """
    rho = solve_steady_state(interaction_hamiltonian(scheme, fields), relaxation_operator(scheme))
    logger.debug(
        "Steady state solved",
        variant=scheme.variant.value,
        rho_bb=rho.population("b"),
        rho_ab=rho.rho_ab,
        density=None if medium is None else medium.density,
    )
    return rho


def _fastest_rate(hamiltonian: np.ndarray, relaxation: Relaxation) -> float:
    return max(float(np.max(np.abs(hamiltonian))), relaxation.max_rate, float(np.max(relaxation.repopulation)))


def evolve(
    rho0: DensityMatrix, scheme: LevelScheme, fields: FieldSet, duration: float, dt: float
) -> DensityMatrix:
    """Integrate the master equation with fixed-step RK4 up to ``duration``.

    The step is shrunk so an integer number of steps lands on ``duration``.
    """
    if duration < 0:
        raise InvalidParameterError(f"evolve needs duration >= 0, got {duration}")
    if not dt > 0:
        raise InvalidParameterError(f"evolve needs dt > 0, got {dt}")
    if duration == 0:
        return rho0

    hamiltonian = interaction_hamiltonian(scheme, fields)
    relaxation = relaxation_operator(scheme)

    steps = max(1, math.ceil(duration / dt - 1e-9))
    h = duration / steps
    fastest = _fastest_rate(hamiltonian, relaxation)
    if fastest > 0 and h > config.evolve_stability / fastest:
        logger.warning(
            "Time step is large compared with the fastest rate",
            dt=h,
            fastest_rate=fastest,
            limit=config.evolve_stability / fastest,
        )

    def rhs(rho: np.ndarray) -> np.ndarray:
        return master_equation_rhs(rho, hamiltonian, relaxation)

    rho = np.array(rho0.matrix, dtype=complex)
    for step in range(steps):
        k1 = rhs(rho)
        k2 = rhs(rho + 0.5 * h * k1)
        k3 = rhs(rho + 0.5 * h * k2)
        k4 = rhs(rho + h * k3)
        rho = rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        rho = 0.5 * (rho + rho.conj().T)
        norm = float(np.linalg.norm(rho))
        if not math.isfinite(norm) or norm > BLOWUP_NORM:
            raise IntegratorError(
                f"density matrix diverged at step {step + 1}/{steps} (t={(step + 1) * h:.3e} s); reduce dt"
            )

    return DensityMatrix(rho)
