from typing import Iterable, Optional
import numpy as np
import pandas as pd
from src.config import config
from src.medium import InvalidParameterError, SingularityError, Variant
from src.utils import logger
from .models import ENVELOPE_COLUMNS, SignalEstimate


def coherence_wavevector(k1: float, k2: float) -> float:
    """Wavevector of the cb coherence grating written by fields 1 and 2."""
    return k1 - k2


def _as_variant(variant) -> Variant:
    try:
        return Variant(variant)
    except ValueError as e:
        raise InvalidParameterError(
            f"unknown scheme variant {variant!r}; expected one of {[v.value for v in Variant]}"
        ) from e


def mismatch(variant, k1: float, k2: float, k3: float, k4: float, signal_direction: int) -> float:
    """Phase mismatch of the generated signal; zero means matched in ``signal_direction``."""
    if signal_direction not in (1, -1):
        raise InvalidParameterError(f"signal_direction must be +1 or -1, got {signal_direction}")
    s2, s3 = _as_variant(variant).closure_signs
    return k1 + s2 * k2 + s3 * k3 - signal_direction * abs(k4)


def envelope(kappa: float, length: float, literal_sinc: bool = False) -> complex:
    """Phase-matching factor (1/L) * integral of exp(i kappa z) over [0, L].

    With ``literal_sinc`` the real form sin(kappa L)/(kappa L) is returned instead.
    """
    if not length > 0:
        raise InvalidParameterError(f"envelope needs L > 0, got {length}")
    if literal_sinc:
        return complex(np.sinc(kappa * length / np.pi))
    half = 0.5 * kappa * length
    return complex(np.exp(1j * half) * np.sinc(half / np.pi))


def power_broadening_ratio(omega3: complex, pump_rabis: tuple[complex, complex]) -> float:
    """|Omega_3|^2 / (|Omega_1|^2 + |Omega_2|^2); the grating survives field 3 when this is small."""
    pump = abs(pump_rabis[0]) ** 2 + abs(pump_rabis[1]) ** 2
    if pump > 0:
        return abs(omega3) ** 2 / pump
    return 0.0 if omega3 == 0 else float("inf")


def _grating_signal(
    rho_cb: complex,
    omega3: complex,
    eta4: float,
    gamma_db: complex,
    kappa: float,
    length: float,
    conjugate_probe: bool,
    literal_sinc: bool,
) -> complex:
    if gamma_db == 0:
        raise SingularityError("signal_closed_form needs Gamma_db != 0")
    reading = omega3.conjugate() if conjugate_probe else omega3
    return -envelope(kappa, length, literal_sinc) * eta4 * length * rho_cb * reading / gamma_db


def signal_estimate(
    rho_cb: complex,
    omega3: complex,
    eta4: float,
    gamma_db: complex,
    kappa: float,
    length: float,
    pump_rabis: tuple[complex, complex],
    conjugate_probe: bool = False,
    literal_sinc: bool = False,
) -> SignalEstimate:
    """Closed-form signal flagged when field 3 power-broadens the grating."""
    omega4 = _grating_signal(rho_cb, omega3, eta4, gamma_db, kappa, length, conjugate_probe, literal_sinc)
    ratio = power_broadening_ratio(omega3, pump_rabis)
    broadened = ratio >= config.validity_threshold
    if broadened:
        logger.warning(
            "Field 3 power-broadens the grating; require |Omega_3|^2 << |Omega_1|^2 + |Omega_2|^2",
            ratio=ratio,
            threshold=config.validity_threshold,
        )
    return SignalEstimate(omega4=omega4, broadening_ratio=ratio, power_broadened=broadened)


def signal_closed_form(
    rho_cb: complex,
    omega3: complex,
    eta4: float,
    gamma_db: complex,
    kappa: float,
    length: float,
    conjugate_probe: bool = False,
    literal_sinc: bool = False,
    pump_rabis: Optional[tuple[complex, complex]] = None,
) -> complex:
    """Generated signal amplitude for a z-uniform grating, to first order in field 3.

    With ``pump_rabis`` the power-broadening check of ``signal_estimate`` runs as well.
    """
    if pump_rabis is not None:
        return signal_estimate(rho_cb, omega3, eta4, gamma_db, kappa, length, pump_rabis,
                               conjugate_probe, literal_sinc).omega4
    return _grating_signal(rho_cb, omega3, eta4, gamma_db, kappa, length, conjugate_probe, literal_sinc)


def envelope_scan(kappas: Iterable[float], length: float, literal_sinc: bool = False) -> pd.DataFrame:
    kappas = np.asarray(list(kappas), dtype=float)
    values = np.array([envelope(k, length, literal_sinc) for k in kappas], dtype=complex)
    return pd.DataFrame(
        {
            ENVELOPE_COLUMNS[0]: kappas,
            ENVELOPE_COLUMNS[1]: np.abs(values),
            ENVELOPE_COLUMNS[2]: np.angle(values),
        }
    )
