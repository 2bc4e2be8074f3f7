from enum import Enum
from typing import Literal, Optional
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


LEVELS = ("a", "b", "c", "d")
LEVEL_INDEX = {name: index for index, name in enumerate(LEVELS)}
FIELD_IDS = (1, 2, 3, 4)


# =============================================================================
# Level schemes
# =============================================================================

class Variant(str, Enum):
    DOUBLE_LAMBDA = "double_lambda"
    LADDER_LAMBDA = "ladder_lambda"
    V_LAMBDA = "v_lambda"

    @property
    def transitions(self) -> dict[int, tuple[str, str]]:
        """(upper, lower) level pair driven by each field."""
        return _TRANSITIONS[self]

    @property
    def closure_signs(self) -> tuple[int, int]:
        """Signs (s2, s3) in nu4 = nu1 + s2*nu2 + s3*nu3 and k4 = k1 + s2*k2 + s3*k3."""
        return _CLOSURE_SIGNS[self]


_TRANSITIONS = {
    Variant.DOUBLE_LAMBDA: {1: ("a", "b"), 2: ("a", "c"), 3: ("d", "c"), 4: ("d", "b")},
    Variant.LADDER_LAMBDA: {1: ("a", "b"), 2: ("a", "c"), 3: ("c", "d"), 4: ("d", "b")},
    Variant.V_LAMBDA: {1: ("a", "b"), 2: ("c", "a"), 3: ("c", "d"), 4: ("d", "b")},
}

_CLOSURE_SIGNS = {
    Variant.DOUBLE_LAMBDA: (-1, 1),
    Variant.LADDER_LAMBDA: (-1, -1),
    Variant.V_LAMBDA: (1, -1),
}


def pair_key(x: str, y: str) -> str:
    """Canonical unordered key for a level pair, in a-b-c-d order."""
    return "".join(sorted((x, y), key=LEVEL_INDEX.__getitem__))


class LevelScheme(BaseModel):
    model_config = ConfigDict(frozen=True)

    variant: Variant
    energies: dict[str, float]
    dipoles: tuple[float, float, float, float]
    decay: dict[str, float] = Field(default_factory=dict, validate_default=True)
    dephasing: dict[str, float] = Field(default_factory=dict)
    branching: dict[str, dict[str, float]] = Field(default_factory=dict)
    repopulation: bool = True

    @field_validator("energies")
    @classmethod
    def energies_complete(cls, v: dict[str, float]) -> dict[str, float]:
        missing = [level for level in LEVELS if level not in v]
        if missing:
            raise ValueError(f"level energies missing for {missing}")
        if v["b"] != 0.0:
            raise ValueError("level b is the energy reference and must sit at 0")
        return {level: float(v[level]) for level in LEVELS}

    @field_validator("dipoles")
    @classmethod
    def dipoles_positive(cls, v: tuple[float, ...]) -> tuple[float, ...]:
        for j, dipole in zip(FIELD_IDS, v):
            if not dipole > 0:
                raise ValueError(f"dipole moment of field {j} must be > 0, got {dipole}")
        return v

    @field_validator("decay")
    @classmethod
    def decay_valid(cls, v: dict[str, float]) -> dict[str, float]:
        for level, rate in v.items():
            if level not in LEVELS:
                raise ValueError(f"unknown level {level!r} in decay rates")
            if rate < 0:
                raise ValueError(f"decay rate of level {level} must be >= 0, got {rate}")
        return {level: float(v.get(level, 0.0)) for level in LEVELS}

    @field_validator("dephasing")
    @classmethod
    def dephasing_valid(cls, v: dict[str, float]) -> dict[str, float]:
        normalized = {}
        for pair, rate in v.items():
            if len(pair) != 2 or pair[0] == pair[1] or any(level not in LEVELS for level in pair):
                raise ValueError(f"invalid level pair {pair!r} in dephasing rates")
            if rate < 0:
                raise ValueError(f"dephasing rate {pair} must be >= 0, got {rate}")
            normalized[pair_key(pair[0], pair[1])] = float(rate)
        return normalized

    @model_validator(mode="after")
    def geometry_consistent(self) -> "LevelScheme":
        for j, (upper, lower) in self.variant.transitions.items():
            if not self.energies[upper] > self.energies[lower]:
                raise ValueError(
                    f"field {j} couples {upper}-{lower} but level {upper} does not lie above {lower} "
                    f"for variant {self.variant.value}"
                )
        for source, targets in self.branching.items():
            if source not in LEVELS or any(target not in LEVELS for target in targets):
                raise ValueError(f"invalid branching entry {source}: {targets}")
            if any(share < 0 for share in targets.values()):
                raise ValueError(f"branching ratios of level {source} must be >= 0")
            if abs(sum(targets.values()) - 1.0) > 1e-12:
                raise ValueError(f"branching ratios of level {source} must sum to 1")
        return self

    def transition_frequency(self, x: str, y: str) -> float:
        return abs(self.energies[x] - self.energies[y])

    @property
    def omega_ab(self) -> float:
        return self.transition_frequency("a", "b")

    @property
    def omega_ac(self) -> float:
        return self.transition_frequency("a", "c")

    @property
    def omega_cb(self) -> float:
        return self.transition_frequency("c", "b")

    @property
    def omega_db(self) -> float:
        return self.transition_frequency("d", "b")

    @property
    def omega_dc(self) -> float:
        return self.transition_frequency("d", "c")

    def field_transition_frequency(self, j: int) -> float:
        upper, lower = self.variant.transitions[j]
        return self.transition_frequency(upper, lower)

    def dipole(self, j: int) -> float:
        return self.dipoles[j - 1]

    def coherence_decay(self, x: str, y: str) -> float:
        """Decay rate of rho_xy: configured dephasing, else half the summed level decay rates."""
        key = pair_key(x, y)
        if key in self.dephasing:
            return self.dephasing[key]
        return 0.5 * (self.decay[x] + self.decay[y])

    def branching_ratios(self, source: str) -> dict[str, float]:
        return self.branching.get(source, {"b": 1.0})


# =============================================================================
# Fields and medium
# =============================================================================

class OpticalField(BaseModel):
    model_config = ConfigDict(frozen=True)

    frequency: float
    rabi: complex = 0j
    direction: Literal[1, -1] = 1

    @field_validator("frequency")
    @classmethod
    def frequency_positive(cls, v: float) -> float:
        if not v > 0:
            raise ValueError(f"field angular frequency must be > 0, got {v}")
        return v


class FieldSet(BaseModel):
    model_config = ConfigDict(frozen=True)

    fields: tuple[OpticalField, OpticalField, OpticalField, OpticalField]
    wavevectors: Optional[tuple[float, float, float, float]] = None

    def field(self, j: int) -> OpticalField:
        return self.fields[j - 1]

    def nu(self, j: int) -> float:
        return self.fields[j - 1].frequency

    def rabi(self, j: int) -> complex:
        return self.fields[j - 1].rabi

    def direction(self, j: int) -> int:
        return self.fields[j - 1].direction

    def k(self, j: int) -> float:
        if self.wavevectors is None:
            raise ValueError("wavevectors have not been filled in; use the dispersion module")
        return self.wavevectors[j - 1]

    def with_field(self, j: int, **changes) -> "FieldSet":
        fields = list(self.fields)
        fields[j - 1] = fields[j - 1].model_copy(update=changes)
        return FieldSet(fields=tuple(fields))

    def with_rabis(self, rabis: tuple[complex, complex, complex, complex]) -> "FieldSet":
        fields = tuple(f.model_copy(update={"rabi": complex(r)}) for f, r in zip(self.fields, rabis))
        return FieldSet(fields=fields, wavevectors=self.wavevectors)

    def with_wavevectors(self, wavevectors: tuple[float, float, float, float]) -> "FieldSet":
        return self.model_copy(update={"wavevectors": tuple(float(k) for k in wavevectors)})


class MediumParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    density: float = Field(ge=0.0)
    doppler_width: float = Field(default=0.0, ge=0.0)
    radiative_decay: float = Field(gt=0.0)
    length: float = Field(gt=0.0)


# =============================================================================
# Config file models
# =============================================================================

class Quantity(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    value: float
    unit: str


class SchemeConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    variant: Variant
    transitions: Optional[dict[str, Quantity]] = None
    levels: Optional[dict[str, Quantity]] = None
    dipoles: dict[str, Quantity]
    decay: dict[str, Quantity] = Field(default_factory=dict)
    dephasing: dict[str, Quantity] = Field(default_factory=dict)
    branching: dict[str, dict[str, float]] = Field(default_factory=dict)
    repopulation: bool = True

    @model_validator(mode="after")
    def one_energy_source(self) -> "SchemeConfig":
        if (self.transitions is None) == (self.levels is None):
            raise ValueError("scheme needs exactly one of 'transitions' or 'levels'")
        return self


class FieldConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    rabi: Quantity = Quantity(value=0.0, unit="rad/s")
    phase: float = 0.0
    detuning: Quantity = Quantity(value=0.0, unit="rad/s")
    direction: Literal[1, -1] = 1


class MediumConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    density: Quantity
    doppler_width: Quantity = Quantity(value=0.0, unit="rad/s")
    radiative_decay: Quantity
    length: Quantity


class SimulationConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    scheme: SchemeConfig
    fields: dict[str, FieldConfig]
    medium: MediumConfig


# =============================================================================
# Errors
# =============================================================================

class BackscatterError(Exception):
    exit_code = 1


class ValidationFailure(BackscatterError):
    exit_code = 2


class InvalidParameterError(ValidationFailure):
    pass


class SchemeInconsistencyError(ValidationFailure):
    pass


class ConfigError(ValidationFailure):
    pass


class NumericalFailure(BackscatterError):
    exit_code = 4


class SingularityError(NumericalFailure):
    pass
