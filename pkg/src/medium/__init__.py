from .models import (
    FIELD_IDS,
    LEVEL_INDEX,
    LEVELS,
    BackscatterError,
    ConfigError,
    FieldSet,
    InvalidParameterError,
    LevelScheme,
    MediumParams,
    NumericalFailure,
    OpticalField,
    Quantity,
    SchemeInconsistencyError,
    SimulationConfig,
    SingularityError,
    ValidationFailure,
    Variant,
    pair_key,
)
from .scheme import (
    build_scheme,
    check_frequency_closure,
    closure_frequency,
    coupling_constant,
    decay_rate_from_dipole,
    dipole_from_decay_rate,
    field_coupling,
    intensity_to_rabi,
    level_phases,
    load_config,
    parse_config,
    rabi_to_intensity,
)
from .units import (
    angular_to_wavelength,
    per_cm3,
    wavelength_to_angular,
    wavenumber_to_angular,
)

__all__ = [
    "FIELD_IDS",
    "LEVEL_INDEX",
    "LEVELS",
    "BackscatterError",
    "ConfigError",
    "FieldSet",
    "InvalidParameterError",
    "LevelScheme",
    "MediumParams",
    "NumericalFailure",
    "OpticalField",
    "Quantity",
    "SchemeInconsistencyError",
    "SimulationConfig",
    "SingularityError",
    "ValidationFailure",
    "Variant",
    "pair_key",
    "build_scheme",
    "check_frequency_closure",
    "closure_frequency",
    "coupling_constant",
    "decay_rate_from_dipole",
    "dipole_from_decay_rate",
    "field_coupling",
    "intensity_to_rabi",
    "level_phases",
    "load_config",
    "parse_config",
    "rabi_to_intensity",
    "angular_to_wavelength",
    "per_cm3",
    "wavelength_to_angular",
    "wavenumber_to_angular",
]
