import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.interpolate import CubicSpline
from src.medium import InvalidParameterError, SingularityError
from .models import RefinementError

MIN_NODES = 64
MAX_PHASE_STEP = 0.5
GAUSS_ORDER = 8


def _complex_spline(z: np.ndarray, values: np.ndarray):
    real = CubicSpline(z, values.real)
    imag = CubicSpline(z, values.imag)
    return lambda x: real(x) + 1j * imag(x)


def oscillatory_integral(values: np.ndarray, kappa: float, length: float) -> complex:
    """Integral over [0, L] of f(z) exp(i kappa z) for f sampled on a uniform grid."""
    values = np.asarray(values, dtype=complex)
    if values.ndim != 1 or values.size < MIN_NODES:
        raise InvalidParameterError(f"profile needs at least {MIN_NODES} uniform nodes, got {values.size}")
    if not length > 0:
        raise InvalidParameterError(f"length must be > 0, got {length}")
    z = np.linspace(0.0, length, values.size)
    dz = z[1] - z[0]
    if abs(kappa) * dz > MAX_PHASE_STEP:
        needed = int(np.ceil(abs(kappa) * length / MAX_PHASE_STEP)) + 1
        raise RefinementError(
            f"|kappa|*dz = {abs(kappa) * dz:.3f} exceeds {MAX_PHASE_STEP}; sample the profile on >= {needed} nodes"
        )

    spline = _complex_spline(z, values)
    nodes, weights = leggauss(GAUSS_ORDER)
    left = z[:-1, None]
    points = left + 0.5 * dz * (nodes[None, :] + 1.0)
    integrand = spline(points) * np.exp(1j * kappa * points)
    return complex(0.5 * dz * np.sum(integrand * weights[None, :]))


def quadrature_signal(
    rho_cb_profile: np.ndarray,
    kappa: float,
    length: float,
    eta4: float,
    omega3: complex,
    gamma_db: complex,
    conjugate_probe: bool = False,
) -> complex:
    """Signal amplitude from a sampled grating profile, by quadrature of the source integral."""
    if gamma_db == 0:
        raise SingularityError("quadrature_signal needs Gamma_db != 0")
    reading = omega3.conjugate() if conjugate_probe else omega3
    return -eta4 * reading / gamma_db * oscillatory_integral(rho_cb_profile, kappa, length)
