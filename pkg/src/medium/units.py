"""Unit handling for config quantities.

Everything internal is SI with angular frequencies in rad/s. Frequency-like
quantities accept wavelengths, wavenumbers, cyclic frequencies (multiplied by
2*pi) and plain rad/s or s^-1.
"""

import math
from scipy.constants import c, e, physical_constants
from .models import ConfigError, InvalidParameterError, Quantity

BOHR_RADIUS = physical_constants["Bohr radius"][0]
DEBYE = 1e-21 / c

_WAVELENGTH_UNITS = {"m": 1.0, "mm": 1e-3, "um": 1e-6, "μm": 1e-6, "nm": 1e-9}
_CYCLIC_UNITS = {"Hz": 1.0, "kHz": 1e3, "MHz": 1e6, "GHz": 1e9, "THz": 1e12}
_ANGULAR_UNITS = {"rad/s": 1.0, "s-1": 1.0, "1/s": 1.0}
_WAVENUMBER_UNITS = {"cm-1": 100.0, "m-1": 1.0}
_DENSITY_UNITS = {"m-3": 1.0, "cm-3": 1e6}
_DIPOLE_UNITS = {"C*m": 1.0, "C·m": 1.0, "D": DEBYE, "ea0": e * BOHR_RADIUS}


def wavelength_to_angular(wavelength: float) -> float:
    if not wavelength > 0:
        raise InvalidParameterError(f"wavelength must be > 0, got {wavelength}")
    return 2.0 * math.pi * c / wavelength


def angular_to_wavelength(omega: float) -> float:
    if not omega > 0:
        raise InvalidParameterError(f"angular frequency must be > 0, got {omega}")
    return 2.0 * math.pi * c / omega


def wavenumber_to_angular(wavenumber_cm: float) -> float:
    """Spectroscopic wavenumber in cm^-1 to rad/s."""
    return 2.0 * math.pi * c * (wavenumber_cm * 100.0)


def _unknown(kind: str, unit: str, table: dict) -> ConfigError:
    return ConfigError(f"unknown {kind} unit {unit!r}; expected one of {sorted(table)}")


def to_angular_frequency(quantity: Quantity) -> float:
    """Any frequency-like quantity to rad/s."""
    unit, value = quantity.unit, quantity.value
    if unit in _WAVELENGTH_UNITS:
        return wavelength_to_angular(value * _WAVELENGTH_UNITS[unit])
    if unit in _WAVENUMBER_UNITS:
        return 2.0 * math.pi * c * value * _WAVENUMBER_UNITS[unit]
    return to_rate(quantity)


def to_rate(quantity: Quantity) -> float:
    """Rates, detunings and Rabi amplitudes: no wavelength forms, sign preserved."""
    unit, value = quantity.unit, quantity.value
    if unit in _ANGULAR_UNITS:
        return value * _ANGULAR_UNITS[unit]
    if unit in _CYCLIC_UNITS:
        return 2.0 * math.pi * value * _CYCLIC_UNITS[unit]
    raise _unknown("frequency", unit, {**_ANGULAR_UNITS, **_CYCLIC_UNITS, **_WAVELENGTH_UNITS, **_WAVENUMBER_UNITS})


def to_density(quantity: Quantity) -> float:
    if quantity.unit not in _DENSITY_UNITS:
        raise _unknown("density", quantity.unit, _DENSITY_UNITS)
    return quantity.value * _DENSITY_UNITS[quantity.unit]


def to_length(quantity: Quantity) -> float:
    if quantity.unit not in _WAVELENGTH_UNITS:
        raise _unknown("length", quantity.unit, _WAVELENGTH_UNITS)
    return quantity.value * _WAVELENGTH_UNITS[quantity.unit]


def to_dipole(quantity: Quantity) -> float:
    if quantity.unit not in _DIPOLE_UNITS:
        raise _unknown("dipole", quantity.unit, _DIPOLE_UNITS)
    return quantity.value * _DIPOLE_UNITS[quantity.unit]


def per_cm3(density_m3: float) -> float:
    return density_m3 * 1e-6
