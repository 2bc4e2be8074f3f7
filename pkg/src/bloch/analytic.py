"""Closed-form coherences in the weak-probe limit.

Valid to lowest order in the probe (field 1) and grating-reading (field 3)
fields with all population in the ground level b.
"""

from src.medium import SingularityError, Variant

SINGULAR_RTOL = 1e-14


def grating_conjugation(variant: Variant) -> tuple[bool, bool]:
    """Whether Omega_2 enters rho_cb, and Omega_3 enters rho_db, conjugated."""
    return {
        Variant.DOUBLE_LAMBDA: (True, False),
        Variant.LADDER_LAMBDA: (True, True),
        Variant.V_LAMBDA: (False, True),
    }[variant]


def weak_probe_coherence(
    omega1: complex,
    omega2: complex,
    gamma_ab: complex,
    gamma_cb: complex,
    conjugate_coupling: bool = True,
) -> tuple[complex, complex]:
    """Return (rho_ab, rho_cb) for a weak probe dressed by the coupling field."""
    coupling = omega2.conjugate() if conjugate_coupling else omega2
    denominator = gamma_ab * gamma_cb + abs(omega2) ** 2
    scale = abs(gamma_ab * gamma_cb) + abs(omega2) ** 2
    if scale == 0.0 or abs(denominator) <= SINGULAR_RTOL * scale:
        raise SingularityError(
            f"weak-probe denominator vanishes: Gamma_ab*Gamma_cb + |Omega_2|^2 = {denominator}"
        )
    rho_ab = 1j * omega1 * gamma_cb / denominator
    rho_cb = -omega1 * coupling / denominator
    return rho_ab, rho_cb


def signal_polarization(
    omega3: complex,
    omega4: complex,
    rho_cb: complex,
    gamma_db: complex,
    conjugate_probe: bool = False,
) -> complex:
    """Return rho_db driven by the signal field and by field 3 reading the cb grating."""
    if gamma_db == 0:
        raise SingularityError("signal polarization needs Gamma_db != 0")
    reading = omega3.conjugate() if conjugate_probe else omega3
    return 1j * (omega4 + rho_cb * reading) / gamma_db
