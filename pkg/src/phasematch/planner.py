import math
from typing import Optional
import numpy as np
from scipy.constants import c
from scipy.optimize import brentq
from src.config import config
from src.dispersion import (
    DispersionSingularityError,
    dispersive_shift,
    effective_doppler_width,
    eit_window,
    field1_frequency,
    group_velocity_at,
)
from src.medium import (
    FieldSet,
    InvalidParameterError,
    LevelScheme,
    MediumParams,
    SingularityError,
    angular_to_wavelength,
    closure_frequency,
    rabi_to_intensity,
)
from src.utils import logger
from .matching import coherence_wavevector, envelope
from .models import IntensityFloor, PhaseMatchReport, RequiredDensity


# =============================================================================
# Closed-form estimates
# =============================================================================

def required_chi(lambda_ab: float, lambda_db: float) -> float:
    """Probe susceptibility that turns the grating around for backward emission."""
    if not lambda_ab > 0 or not lambda_db > 0:
        raise InvalidParameterError("required_chi needs positive wavelengths")
    return -4.0 * lambda_ab / lambda_db


def resonance_shift(lambda_ab: float, density: float, gamma_r: float, delta: float, omega2: complex) -> float:
    """Dispersive wavevector shift of the probe in the density estimate; equals -2 k4 on resonance."""
    intensity = abs(omega2) ** 2
    if intensity == 0.0:
        raise SingularityError("resonance_shift needs Omega_2 != 0")
    return 3.0 * lambda_ab**2 * density * gamma_r * delta / (16.0 * math.pi * intensity)


def required_density(
    lambda_ab: float,
    k4: float,
    omega2: complex,
    gamma_r: float,
    delta: float,
    doppler_width: float,
) -> RequiredDensity:
    """Density needed for backward matching, at detuning ``delta`` and at the EIT window edge."""
    if not (lambda_ab > 0 and k4 > 0 and gamma_r > 0 and doppler_width > 0):
        raise InvalidParameterError("required_density needs positive wavelength, k4, gamma_r and doppler width")
    if delta == 0.0 or omega2 == 0:
        raise SingularityError("required_density needs delta != 0 and Omega_2 != 0")
    base = 32.0 * math.pi * k4 / (3.0 * lambda_ab**2)
    return RequiredDensity(
        exact=base * abs(omega2) ** 2 / (gamma_r * abs(delta)),
        window_limit=base * math.sqrt(doppler_width / gamma_r),
    )


def intensity_floor(
    gamma_bc: float, doppler_width: float, dipole: float, margin: Optional[float] = None
) -> IntensityFloor:
    """Smallest coupling |Omega|^2 that keeps the ground coherence against Doppler dephasing."""
    if gamma_bc < 0 or not doppler_width > 0 or not dipole > 0:
        raise InvalidParameterError("intensity_floor needs gamma_bc >= 0, doppler_width > 0 and dipole > 0")
    margin = config.intensity_margin if margin is None else margin
    rabi_squared = margin * gamma_bc * doppler_width
    return IntensityFloor(rabi_squared=rabi_squared, intensity=rabi_to_intensity(math.sqrt(rabi_squared), dipole))


def linear_detuning_estimate(k_closure: float, k4: float, vg: float) -> float:
    """Small-detuning planner estimate delta = -(k_closure + |k4|) * V_g."""
    return -(k_closure + abs(k4)) * vg


# =============================================================================
# Exact planner
# =============================================================================

def wavevectors_at(
    scheme: LevelScheme, fields: FieldSet, medium: MediumParams, delta: float
) -> tuple[float, float, float, float]:
    """Wavevectors with the probe at omega_ab + delta: dispersive k1, vacuum k2..k4."""
    nu1 = field1_frequency(scheme, delta)
    nu4 = closure_frequency(scheme.variant, nu1, fields.nu(2), fields.nu(3))
    k1 = nu1 / c + dispersive_shift(scheme, fields, medium, delta)
    return k1, fields.nu(2) / c, fields.nu(3) / c, nu4 / c


def grating_wavevector(scheme: LevelScheme, fields: FieldSet, medium: MediumParams, delta: float) -> float:
    k1, k2, _, _ = wavevectors_at(scheme, fields, medium, delta)
    return coherence_wavevector(k1, k2)


def signal_mismatches(scheme: LevelScheme, fields: FieldSet, medium: MediumParams, delta: float) -> tuple[float, float]:
    """Return (kappa_forward, kappa_backward) at field-1 detuning delta.

    The vacuum parts of k1 + s2 k2 + s3 k3 sum to nu4/c by frequency closure, so the
    forward mismatch is the field-1 dispersive shift alone and the backward one adds 2 nu4/c.
    """
    nu4 = closure_frequency(scheme.variant, field1_frequency(scheme, delta), fields.nu(2), fields.nu(3))
    shift = dispersive_shift(scheme, fields, medium, delta)
    return shift, shift + 2.0 * nu4 / c


def backward_mismatch(scheme: LevelScheme, fields: FieldSet, medium: MediumParams, delta: float) -> float:
    return signal_mismatches(scheme, fields, medium, delta)[1]


def _innermost_bracket(deltas: np.ndarray, values: np.ndarray) -> Optional[tuple[float, float]]:
    """Sign change closest to delta = 0, scanning from the right end of the grid."""
    for i in range(len(deltas) - 1, 0, -1):
        left, right = values[i - 1], values[i]
        if not (np.isfinite(left) and np.isfinite(right)):
            continue
        if left == 0.0 or np.sign(left) != np.sign(right):
            return float(deltas[i - 1]), float(deltas[i])
    return None


def _safe_mismatch(scheme, fields, medium, delta: float) -> float:
    try:
        return backward_mismatch(scheme, fields, medium, delta)
    except SingularityError:
        return float("nan")


def _linear_estimate(scheme: LevelScheme, fields: FieldSet, medium: MediumParams) -> Optional[float]:
    k4 = closure_frequency(scheme.variant, scheme.omega_ab, fields.nu(2), fields.nu(3)) / c
    try:
        vg = group_velocity_at(scheme, fields, medium, 0.0)
    except DispersionSingularityError:
        return None
    # vacuum k1 + s2 k2 + s3 k3 equals k4 by frequency closure
    return linear_detuning_estimate(k4, k4, vg)


def plan_backscatter(
    scheme: LevelScheme, fields: FieldSet, medium: MediumParams, literal_sinc: bool = False
) -> PhaseMatchReport:
    """Find the probe detuning at which the signal is phase matched backwards.

    Infeasibility is reported, not raised.
    """
    omega2 = fields.rabi(2)
    if omega2 == 0:
        raise InvalidParameterError("plan_backscatter needs a nonzero coupling field (field 2)")

    doppler = effective_doppler_width(medium)
    window = eit_window(omega2, medium.radiative_decay, doppler)
    lambda_ab = angular_to_wavelength(scheme.omega_ab)
    chi_target = required_chi(lambda_ab, angular_to_wavelength(fields.nu(4)))
    k4_nominal = fields.nu(4) / c
    density = required_density(lambda_ab, k4_nominal, omega2, medium.radiative_decay, window, doppler)
    floor = intensity_floor(scheme.coherence_decay("b", "c"), doppler, scheme.dipole(2))

    deltas = np.linspace(-window, 0.0, config.planner_scan_points)
    values = np.array([_safe_mismatch(scheme, fields, medium, d) for d in deltas])
    bracket = _innermost_bracket(deltas, values)

    if bracket is None:
        reason = (
            f"detuning exceeds EIT window: no backward phase matching for |delta| <= {window:.4e} rad/s "
            f"(density {medium.density:.4e} m^-3, estimated need {density.window_limit:.4e} m^-3)"
        )
        logger.warning("Backscatter plan infeasible", reason=reason)
        return PhaseMatchReport(N_star=density.window_limit, chi_target=chi_target, feasible=False, reason=reason)

    left, right = bracket
    if backward_mismatch(scheme, fields, medium, left) == 0.0:
        delta_star = left
    else:
        delta_star = brentq(
            lambda d: backward_mismatch(scheme, fields, medium, d), left, right, xtol=1e-14 * window, maxiter=200
        )
    k1, k2, _, _ = wavevectors_at(scheme, fields, medium, delta_star)
    kappa_forward, kappa_backward = signal_mismatches(scheme, fields, medium, delta_star)

    feasible = floor.rabi_squared <= abs(omega2) ** 2
    if feasible:
        reason = f"backward phase matching at delta*={delta_star:.6e} rad/s inside window {window:.4e} rad/s"
    else:
        reason = (
            f"coupling field below intensity floor: |Omega_2|^2={abs(omega2) ** 2:.4e} < "
            f"{floor.rabi_squared:.4e} rad^2/s^2 ({floor.intensity:.4e} W/m^2)"
        )
        logger.warning("Backscatter plan infeasible", reason=reason)

    report = PhaseMatchReport(
        delta_k=coherence_wavevector(k1, k2),
        kappa_forward=kappa_forward,
        kappa_backward=kappa_backward,
        envelope_forward=min(abs(envelope(kappa_forward, medium.length, literal_sinc)), 1.0),
        envelope_backward=min(abs(envelope(kappa_backward, medium.length, literal_sinc)), 1.0),
        delta_star=delta_star,
        N_star=density.window_limit,
        chi_target=chi_target,
        feasible=feasible,
        reason=reason,
    )
    logger.debug(
        "Backscatter plan",
        delta_star=delta_star,
        delta_linear=_linear_estimate(scheme, fields, medium),
        kappa_backward=kappa_backward,
        feasible=feasible,
    )
    return report
