import cmath
import json
import math
from pathlib import Path
from typing import Any, Union
from pydantic import ValidationError
from scipy.constants import c, epsilon_0, hbar
from src.utils import logger
from .models import (
    FIELD_IDS,
    ConfigError,
    FieldSet,
    InvalidParameterError,
    LevelScheme,
    MediumParams,
    OpticalField,
    SchemeConfig,
    SchemeInconsistencyError,
    SimulationConfig,
    Variant,
    pair_key,
)
from .units import to_angular_frequency, to_density, to_dipole, to_length, to_rate

CLOSURE_RTOL = 1e-9


def coupling_constant(nu: float, density: float, dipole: float) -> float:
    """Field-medium coupling eta = nu N dipole^2 / (2 eps0 hbar c), in rad s^-1 m^-1."""
    if not nu > 0:
        raise InvalidParameterError(f"coupling_constant needs nu > 0, got {nu}")
    if not density >= 0:
        raise InvalidParameterError(f"coupling_constant needs N >= 0, got {density}")
    if not dipole > 0:
        raise InvalidParameterError(f"coupling_constant needs dipole > 0, got {dipole}")
    return nu * density * dipole**2 / (2.0 * epsilon_0 * hbar * c)


def field_coupling(scheme: LevelScheme, fields: FieldSet, medium: MediumParams, j: int) -> float:
    return coupling_constant(fields.nu(j), medium.density, scheme.dipole(j))


def decay_rate_from_dipole(omega: float, dipole: float) -> float:
    """Spontaneous emission rate of a two-level transition."""
    return omega**3 * dipole**2 / (3.0 * math.pi * epsilon_0 * hbar * c**3)


def dipole_from_decay_rate(omega: float, gamma: float) -> float:
    if not omega > 0 or not gamma > 0:
        raise InvalidParameterError("dipole_from_decay_rate needs positive frequency and rate")
    return math.sqrt(3.0 * math.pi * epsilon_0 * hbar * c**3 * gamma / omega**3)


def rabi_to_intensity(rabi: float, dipole: float) -> float:
    """Cycle-averaged intensity (W/m^2) of a field with Rabi amplitude |Omega| = dipole*E/hbar."""
    field_amplitude = hbar * abs(rabi) / dipole
    return 0.5 * epsilon_0 * c * field_amplitude**2


def intensity_to_rabi(intensity: float, dipole: float) -> float:
    return dipole / hbar * math.sqrt(2.0 * intensity / (epsilon_0 * c))


def level_phases(variant: Variant, nu1: float, nu2: float, nu3: float) -> dict[str, float]:
    """Rotating-frame phase rate of every level, b fixed at zero."""
    s2, s3 = variant.closure_signs
    theta_c = nu1 + s2 * nu2
    return {"a": nu1, "b": 0.0, "c": theta_c, "d": theta_c + s3 * nu3}


def closure_frequency(variant: Variant, nu1: float, nu2: float, nu3: float) -> float:
    """Signal frequency nu4 fixed by the scheme's frequency closure."""
    return level_phases(variant, nu1, nu2, nu3)["d"]


def check_frequency_closure(scheme: LevelScheme, fields: FieldSet) -> None:
    expected = closure_frequency(scheme.variant, fields.nu(1), fields.nu(2), fields.nu(3))
    if abs(fields.nu(4) - expected) > CLOSURE_RTOL * fields.nu(1):
        s2, s3 = scheme.variant.closure_signs
        raise SchemeInconsistencyError(
            f"frequency closure nu4 = nu1 {_sign(s2)} nu2 {_sign(s3)} nu3 violated for "
            f"{scheme.variant.value}: nu4={fields.nu(4):.12e}, expected {expected:.12e}"
        )


def _sign(s: int) -> str:
    return "+" if s > 0 else "-"


def _energies_from_transitions(variant: Variant, transitions: dict[str, float]) -> dict[str, float]:
    """Level energies from transition frequencies keyed by canonical pair ('ab', 'ac', 'cd', 'bd', ...)."""
    missing = [key for key in ("ab", "ac") if key not in transitions]
    if missing:
        raise ConfigError(f"scheme.transitions must define {missing}")
    if "cd" not in transitions and "bd" not in transitions:
        raise ConfigError("scheme.transitions must define 'dc' or 'db'")

    s2, s3 = variant.closure_signs
    energies = {"a": transitions["ab"], "b": 0.0}
    energies["c"] = energies["a"] + s2 * transitions["ac"]
    if "cd" in transitions:
        energies["d"] = energies["c"] + s3 * transitions["cd"]
    else:
        energies["d"] = transitions["bd"]

    identities = {
        "bc": f"ω_cb = ω_ab {_sign(s2)} ω_ac",
        "bd": f"ω_db = ω_ab {_sign(s2)} ω_ac {_sign(s3)} ω_dc",
        "cd": f"ω_db = ω_ab {_sign(s2)} ω_ac {_sign(s3)} ω_dc",
    }
    violations = []
    for key, given in transitions.items():
        implied = abs(energies[key[0]] - energies[key[1]])
        if abs(implied - given) > CLOSURE_RTOL * max(given, implied):
            violations.append(f"{identities.get(key, key)} (given ω_{key}={given:.9e}, implied {implied:.9e})")
    if violations:
        raise SchemeInconsistencyError("transition closure violated: " + "; ".join(violations))
    return energies


def _scheme_from_config(cfg: SchemeConfig) -> LevelScheme:
    if cfg.transitions is not None:
        transitions = {}
        for raw_key, quantity in cfg.transitions.items():
            if len(raw_key) != 2 or any(level not in "abcd" for level in raw_key) or raw_key[0] == raw_key[1]:
                raise ConfigError(f"invalid transition key {raw_key!r}")
            transitions[pair_key(raw_key[0], raw_key[1])] = to_angular_frequency(quantity)
        energies = _energies_from_transitions(cfg.variant, transitions)
    else:
        missing = [level for level in ("a", "c", "d") if level not in cfg.levels]
        if missing:
            raise ConfigError(f"scheme.levels must define {missing}")
        energies = {"b": 0.0, **{level: to_angular_frequency(q) for level, q in cfg.levels.items() if level != "b"}}

    missing_dipoles = [str(j) for j in FIELD_IDS if str(j) not in cfg.dipoles]
    if missing_dipoles:
        raise ConfigError(f"scheme.dipoles must define fields {missing_dipoles}")

    try:
        return LevelScheme(
            variant=cfg.variant,
            energies=energies,
            dipoles=tuple(to_dipole(cfg.dipoles[str(j)]) for j in FIELD_IDS),
            decay={level: to_rate(q) for level, q in cfg.decay.items()},
            dephasing={pair: to_rate(q) for pair, q in cfg.dephasing.items()},
            branching=cfg.branching,
            repopulation=cfg.repopulation,
        )
    except ValidationError as e:
        raise SchemeInconsistencyError(f"invalid level scheme: {e}") from e


def _fields_from_config(cfg: SimulationConfig, scheme: LevelScheme) -> FieldSet:
    missing = [str(j) for j in (1, 2, 3) if str(j) not in cfg.fields]
    if missing:
        raise ConfigError(f"fields {missing} are missing; fields 1-3 are required, field 4 is optional")
    unknown = sorted(set(cfg.fields) - {"1", "2", "3", "4"})
    if unknown:
        raise ConfigError(f"unknown field keys {unknown}; expected '1'..'4'")

    nus = {}
    for j in (1, 2, 3):
        nus[j] = scheme.field_transition_frequency(j) + to_rate(cfg.fields[str(j)].detuning)
    nus[4] = closure_frequency(scheme.variant, nus[1], nus[2], nus[3])
    if "4" in cfg.fields and cfg.fields["4"].detuning.value != 0.0:
        logger.warning("Field 4 detuning ignored; its frequency follows from the closure", nu4=nus[4])

    fields = []
    for j in FIELD_IDS:
        field_cfg = cfg.fields.get(str(j))
        rabi = 0j if field_cfg is None else to_rate(field_cfg.rabi) * cmath.exp(1j * field_cfg.phase)
        direction = 1 if field_cfg is None else field_cfg.direction
        try:
            fields.append(OpticalField(frequency=nus[j], rabi=rabi, direction=direction))
        except ValidationError as e:
            raise InvalidParameterError(f"field {j}: {e}") from e
    return FieldSet(fields=tuple(fields))


def _medium_from_config(cfg: SimulationConfig) -> MediumParams:
    try:
        return MediumParams(
            density=to_density(cfg.medium.density),
            doppler_width=to_rate(cfg.medium.doppler_width),
            radiative_decay=to_rate(cfg.medium.radiative_decay),
            length=to_length(cfg.medium.length),
        )
    except ValidationError as e:
        raise InvalidParameterError(f"invalid medium parameters: {e}") from e


def parse_config(raw: Union[dict[str, Any], SimulationConfig]) -> SimulationConfig:
    if isinstance(raw, SimulationConfig):
        return raw
    try:
        return SimulationConfig.model_validate(raw)
    except ValidationError as e:
        raise ConfigError(f"invalid simulation config: {e}") from e


def load_config(path: Union[str, Path]) -> SimulationConfig:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file {path} does not exist")
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ConfigError(f"config file {path} is not valid JSON: {e}") from e
    return parse_config(raw)


def build_scheme(config: Union[dict[str, Any], SimulationConfig]) -> tuple[LevelScheme, FieldSet, MediumParams]:
    cfg = parse_config(config)
    scheme = _scheme_from_config(cfg.scheme)
    fields = _fields_from_config(cfg, scheme)
    medium = _medium_from_config(cfg)
    check_frequency_closure(scheme, fields)

    logger.debug(
        "Scheme built",
        variant=scheme.variant.value,
        omega_ab=scheme.omega_ab,
        omega_cb=scheme.omega_cb,
        nu4=fields.nu(4),
        density=medium.density,
    )
    return scheme, fields, medium
