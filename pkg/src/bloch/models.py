from dataclasses import dataclass, field
import numpy as np
from src.medium import LEVEL_INDEX, LEVELS, NumericalFailure

HERMITIAN_ATOL = 1e-10
TRACE_ATOL = 1e-10


# =============================================================================
# Density matrix
# =============================================================================

@dataclass(frozen=True)
class DensityMatrix:
    """4x4 density matrix indexed by levels (a, b, c, d)."""

    matrix: np.ndarray

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=complex)
        if matrix.shape != (4, 4):
            raise ValueError(f"density matrix must be 4x4, got shape {matrix.shape}")
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    @classmethod
    def pure(cls, level: str = "b") -> "DensityMatrix":
        matrix = np.zeros((4, 4), dtype=complex)
        matrix[LEVEL_INDEX[level], LEVEL_INDEX[level]] = 1.0
        return cls(matrix)

    def element(self, x: str, y: str) -> complex:
        return complex(self.matrix[LEVEL_INDEX[x], LEVEL_INDEX[y]])

    def population(self, level: str) -> float:
        return float(self.matrix[LEVEL_INDEX[level], LEVEL_INDEX[level]].real)

    @property
    def populations(self) -> dict[str, float]:
        return {level: self.population(level) for level in LEVELS}

    @property
    def trace(self) -> complex:
        return complex(np.trace(self.matrix))

    @property
    def rho_ab(self) -> complex:
        return self.element("a", "b")

    @property
    def rho_cb(self) -> complex:
        return self.element("c", "b")

    @property
    def rho_ca(self) -> complex:
        return self.element("c", "a")

    @property
    def rho_db(self) -> complex:
        return self.element("d", "b")

    @property
    def rho_dc(self) -> complex:
        return self.element("d", "c")

    def is_physical(self, atol: float = HERMITIAN_ATOL) -> bool:
        hermitian = np.allclose(self.matrix, self.matrix.conj().T, atol=atol, rtol=0.0)
        normalized = abs(self.trace - 1.0) <= TRACE_ATOL
        diagonal = np.diag(self.matrix)
        bounded = bool(np.all(np.abs(diagonal.imag) <= atol) and np.all(diagonal.real >= -atol)
                       and np.all(diagonal.real <= 1.0 + atol))
        return bool(hermitian and normalized and bounded)


# =============================================================================
# Rates
# =============================================================================

@dataclass(frozen=True)
class ComplexRates:
    """Complex coherence rates: real part is the dephasing, imaginary part the detuning."""

    gamma_ab: complex
    gamma_ca: complex
    gamma_cb: complex
    gamma_db: complex


@dataclass(frozen=True)
class Relaxation:
    """Relaxation superoperator pieces.

    ``decay_matrix[x, y]`` is the decay rate of rho_xy (level decay on the
    diagonal, coherence decay off it); ``repopulation[t, s]`` is the rate at
    which population of level s reappears in level t.
    """

    decay_matrix: np.ndarray
    repopulation: np.ndarray = field(default_factory=lambda: np.zeros((4, 4)))
    repopulation_enabled: bool = True

    @property
    def max_rate(self) -> float:
        return float(np.max(np.abs(self.decay_matrix)))


# =============================================================================
# Errors
# =============================================================================

class DegenerateSteadyStateError(NumericalFailure):
    def __init__(self, message: str, null_space_dimension: int):
        super().__init__(message)
        self.null_space_dimension = null_space_dimension


class IntegratorError(NumericalFailure):
    pass
