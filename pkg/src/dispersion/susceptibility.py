import math
from typing import Iterable
import numpy as np
import pandas as pd
from scipy.constants import c
from src.bloch import complex_rates, grating_conjugation, weak_probe_coherence
from src.medium import (
    FieldSet,
    InvalidParameterError,
    LevelScheme,
    MediumParams,
    SingularityError,
    field_coupling,
)
from src.utils import logger
from .models import DISPERSION_COLUMNS, DispersionSample, DispersionSingularityError

MIN_FD_STEP = 1.0
FD_RELATIVE_STEP = 1e-6


def field1_frequency(scheme: LevelScheme, delta: float) -> float:
    nu1 = scheme.omega_ab + delta
    if not nu1 > 0:
        raise InvalidParameterError(f"detuning {delta} puts nu1 at or below zero")
    return nu1


def _field1_response(scheme: LevelScheme, fields: FieldSet, medium: MediumParams, delta: float) -> tuple[float, complex]:
    """Return (eta1, rho_ab/Omega_1) at probe detuning delta, field 2 held fixed."""
    shifted = fields.with_field(1, frequency=field1_frequency(scheme, delta))
    rates = complex_rates(scheme, fields, field1_detuning=delta)
    conjugate_coupling, _ = grating_conjugation(scheme.variant)
    # Linear response: rho_ab/Omega_1 does not depend on the field-1 amplitude.
    rho_ab, _ = weak_probe_coherence(1.0 + 0j, fields.rabi(2), rates.gamma_ab, rates.gamma_cb, conjugate_coupling)
    return field_coupling(scheme, shifted, medium, 1), rho_ab


def susceptibility(scheme: LevelScheme, fields: FieldSet, medium: MediumParams, delta: float) -> complex:
    """Dimensionless probe susceptibility chi = (2c/nu1) eta1 rho_ab/Omega_1 at nu1 = omega_ab + delta."""
    eta1, response = _field1_response(scheme, fields, medium, delta)
    return complex(2.0 * c / field1_frequency(scheme, delta) * eta1 * response)


def dispersive_shift(scheme: LevelScheme, fields: FieldSet, medium: MediumParams, delta: float) -> float:
    """Medium contribution k1 - nu1/c = eta1 Re(rho_ab/Omega_1) to the field-1 wavevector, in rad/m."""
    eta1, response = _field1_response(scheme, fields, medium, delta)
    return eta1 * response.real


def wavevector(nu: float, chi: complex) -> tuple[float, float]:
    """Return (k, alpha): propagation constant and field absorption coefficient."""
    if not nu > 0:
        raise InvalidParameterError(f"wavevector needs nu > 0, got {nu}")
    k = nu / c * (1.0 + chi.real / 2.0)
    alpha = nu / c * chi.imag / 2.0
    return k, alpha


def group_velocity_at(scheme: LevelScheme, fields: FieldSet, medium: MediumParams, delta: float) -> float:
    """Field-1 group velocity at detuning delta, by centered difference of the dispersive shift in delta."""
    h = max(FD_RELATIVE_STEP * abs(fields.rabi(2)), MIN_FD_STEP)
    try:
        slope = 1.0 / c + (
            dispersive_shift(scheme, fields, medium, delta + h) - dispersive_shift(scheme, fields, medium, delta - h)
        ) / (2.0 * h)
    except SingularityError as e:
        raise DispersionSingularityError(f"dispersion slope undefined near delta={delta:.9e}: {e}") from e
    if not math.isfinite(slope) or slope == 0.0:
        raise DispersionSingularityError(f"dispersion slope {slope} at delta={delta:.9e} gives no group velocity")
    return 1.0 / slope


def group_velocity(scheme: LevelScheme, fields: FieldSet, medium: MediumParams, nu: float) -> float:
    """Inverse slope of k(nu) for the probe at absolute frequency nu."""
    return group_velocity_at(scheme, fields, medium, nu - scheme.omega_ab)


def doppler_susceptibility(
    delta: float,
    lambda_ab: float,
    density: float,
    gamma_r: float,
    doppler_width: float,
    omega2: complex,
) -> complex:
    """Doppler-broadened EIT susceptibility near two-photon resonance, to second order in delta."""
    intensity = abs(omega2) ** 2
    if intensity == 0.0:
        raise SingularityError("doppler_susceptibility needs Omega_2 != 0")
    prefactor = 3.0 * lambda_ab**3 * density / (8.0 * math.pi**2)
    return prefactor * complex(gamma_r * delta / intensity, gamma_r * doppler_width * delta**2 / intensity**2)


def eit_window(omega2: complex, gamma_r: float, doppler_width: float) -> float:
    """Largest |delta| inside the Doppler-broadened transparency window."""
    if not gamma_r > 0 or not doppler_width > 0:
        raise InvalidParameterError(
            f"eit_window needs gamma_r > 0 and doppler_width > 0, got {gamma_r}, {doppler_width}"
        )
    return abs(omega2) ** 2 / math.sqrt(gamma_r * doppler_width)


def effective_doppler_width(medium: MediumParams) -> float:
    """Inhomogeneous width used for window estimates, floored at the homogeneous width."""
    return max(medium.doppler_width, medium.radiative_decay)


def medium_eit_window(fields: FieldSet, medium: MediumParams) -> float:
    return eit_window(fields.rabi(2), medium.radiative_decay, effective_doppler_width(medium))


def dispersion_sample(scheme: LevelScheme, fields: FieldSet, medium: MediumParams, delta: float) -> DispersionSample:
    nu = scheme.omega_ab + delta
    chi = susceptibility(scheme, fields, medium, delta)
    k, _ = wavevector(nu, chi)
    return DispersionSample(nu=nu, k=k, chi_re=chi.real, chi_im=chi.imag,
                            vg=group_velocity_at(scheme, fields, medium, delta))


def dispersion_scan(
    scheme: LevelScheme, fields: FieldSet, medium: MediumParams, deltas: Iterable[float]
) -> list[DispersionSample]:
    samples = [dispersion_sample(scheme, fields, medium, float(d)) for d in deltas]
    logger.debug("Dispersion scan done", points=len(samples))
    return samples


def default_detuning_grid(fields: FieldSet, medium: MediumParams, points: int, span: float = 2.0) -> np.ndarray:
    """Symmetric probe detuning grid covering ``span`` EIT windows on each side."""
    window = medium_eit_window(fields, medium)
    return np.linspace(-span * window, span * window, points)


def dispersion_frame(samples: list[DispersionSample]) -> pd.DataFrame:
    return pd.DataFrame([s.as_row() for s in samples], columns=list(DISPERSION_COLUMNS))


def fill_wavevectors(scheme: LevelScheme, fields: FieldSet, medium: MediumParams) -> FieldSet:
    """Attach wavevectors: dispersive k1 at the current probe detuning, vacuum values for fields 2-4."""
    delta = fields.nu(1) - scheme.omega_ab
    k1, _ = wavevector(fields.nu(1), susceptibility(scheme, fields, medium, delta))
    return fields.with_wavevectors((k1, fields.nu(2) / c, fields.nu(3) / c, fields.nu(4) / c))
