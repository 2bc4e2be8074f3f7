"""Envelope propagation along z with a locally stationary medium.

Each field is written as A_j(z) exp(i s_j q_j z) with direction s_j and
carrier q_j (the dispersive k1 for the probe, vacuum values otherwise). The
medium is re-solved to its steady state at every evaluation point, and

    dA_j/dz = s_j [i eta_j rho_j exp(-i s_j q_j z) - i (q_j - nu_j/c) A_j]

where rho_j is the coherence on field j's transition.
"""

import math
from typing import Callable, Optional
import numpy as np
from scipy.constants import c
from scipy.interpolate import CubicSpline
from src.bloch import (
    complex_rates,
    frame_detunings,
    grating_conjugation,
    hamiltonian_from_rabis,
    relaxation_operator,
    solve_steady_state,
    weak_probe_coherence,
)
from src.config import config
from src.dispersion import fill_wavevectors
from src.medium import (
    FIELD_IDS,
    LEVEL_INDEX,
    LEVELS,
    FieldSet,
    InvalidParameterError,
    LevelScheme,
    MediumParams,
    SingularityError,
    field_coupling,
)
from src.phasematch import mismatch
from src.utils import logger
from .models import FieldProfiles, PropagationError, PropagationOptions, RefinementError
from .validity import validity_report

MIN_GRID = 64

Derivative = Callable[[float, np.ndarray], np.ndarray]


def _rk4_step(derivative: Derivative, z: float, y: np.ndarray, h: float) -> np.ndarray:
    k1 = derivative(z, y)
    k2 = derivative(z + 0.5 * h, y + 0.5 * h * k1)
    k3 = derivative(z + 0.5 * h, y + 0.5 * h * k2)
    k4 = derivative(z + h, y + h * k3)
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


class _Medium:
    """Local response of the medium to the four envelopes at position z."""

    def __init__(self, scheme: LevelScheme, fields: FieldSet, medium: MediumParams, options: PropagationOptions,
                 directions: tuple[int, ...], carriers: tuple[float, ...]):
        self.variant = scheme.variant
        self.detunings = frame_detunings(scheme, fields)
        self.relaxation = relaxation_operator(scheme)
        self.directions = np.array(directions, dtype=float)
        self.carriers = np.array(carriers, dtype=float)
        self.mismatch_rates = self.carriers - np.array([fields.nu(j) / c for j in FIELD_IDS])
        self.etas = np.array([field_coupling(scheme, fields, medium, j) for j in FIELD_IDS])
        transitions = dict(scheme.variant.transitions)
        if options.signal_source == "dc":
            transitions[4] = ("d", "c")
        self.sources = [(LEVEL_INDEX[transitions[j][0]], LEVEL_INDEX[transitions[j][1]]) for j in FIELD_IDS]

    def phases(self, z: float) -> np.ndarray:
        return np.exp(1j * self.directions * self.carriers * z)

    def derivative(self, z: float, envelopes: np.ndarray) -> np.ndarray:
        phases = self.phases(z)
        hamiltonian = hamiltonian_from_rabis(self.detunings, self.variant, envelopes * phases)
        rho = solve_steady_state(hamiltonian, self.relaxation).matrix
        if not np.all(np.isfinite(rho)):
            raise PropagationError("non-finite medium response", z)
        coherences = np.array([rho[upper, lower] for upper, lower in self.sources])
        return self.directions * (
            1j * self.etas * coherences * phases.conj() - 1j * self.mismatch_rates * envelopes
        )


def _stiffness(scheme: LevelScheme, fields: FieldSet, response: _Medium, pump_depletion: bool) -> float:
    """Largest linear self-coupling eta_j |d rho_j / d Omega_j| of a marched envelope, in 1/m.

    Fields 2 and 3 drive transitions between empty levels and are left out.
    """
    upper, lower = response.sources[3]
    eps = response.detunings
    signal_rate = complex(scheme.coherence_decay(LEVELS[upper], LEVELS[lower]), eps[upper] - eps[lower])
    rates = [response.etas[3] / abs(signal_rate)] if signal_rate != 0 else []
    if pump_depletion:
        gammas = complex_rates(scheme, fields)
        conjugate_coupling, _ = grating_conjugation(scheme.variant)
        try:
            rho_ab, _ = weak_probe_coherence(1.0 + 0j, fields.rabi(2), gammas.gamma_ab, gammas.gamma_cb,
                                             conjugate_coupling)
            rates.append(response.etas[0] * abs(rho_ab))
        except SingularityError:
            pass
    return max(rates, default=0.0)


def _check_inputs(fields: FieldSet, nz: int) -> None:
    if nz < MIN_GRID:
        raise InvalidParameterError(f"propagation grid needs nz >= {MIN_GRID}, got {nz}")
    reversed_inputs = [j for j in (1, 2, 3) if fields.direction(j) != 1]
    if reversed_inputs:
        raise InvalidParameterError(f"input fields {reversed_inputs} must co-propagate along +z")


def _march(derivative: Derivative, z: np.ndarray, y0: np.ndarray) -> np.ndarray:
    out = np.empty((z.size, y0.size), dtype=complex)
    out[0] = y0
    for i in range(z.size - 1):
        out[i + 1] = _rk4_step(derivative, z[i], out[i], z[i + 1] - z[i])
    return out


def _complex_splines(z: np.ndarray, values: np.ndarray) -> Callable[[float], np.ndarray]:
    real = CubicSpline(z, values.real, axis=0)
    imag = CubicSpline(z, values.imag, axis=0)
    return lambda x: real(x) + 1j * imag(x)


def propagate_fields(
    scheme: LevelScheme,
    fields: FieldSet,
    medium: MediumParams,
    nz: Optional[int] = None,
    options: Optional[PropagationOptions] = None,
) -> FieldProfiles:
    """March the four envelopes through the medium.

    Fields 1-3 enter at z = 0. A forward signal starts from zero at z = 0; a
    backward signal starts from zero at z = L and is swept back to z = 0 through
    the already propagated inputs.
    """
    nz = config.grid if nz is None else nz
    options = options or PropagationOptions()
    _check_inputs(fields, nz)

    signal_direction = options.signal_direction or fields.direction(4)
    directions = (1, 1, 1, signal_direction)
    carriers = fill_wavevectors(scheme, fields, medium).wavevectors
    response = _Medium(scheme, fields, medium, options, directions, carriers)

    z = options.z_origin + np.linspace(0.0, medium.length, nz)
    h = z[1] - z[0]
    stiffness = _stiffness(scheme, fields, response, options.pump_depletion)
    if stiffness * h > config.march_stability:
        needed = math.ceil(stiffness * medium.length / config.march_stability) + 1
        raise RefinementError(
            f"grid step {h:.3e} m spans {stiffness * h:.3g} medium response lengths ({1 / stiffness:.3e} m), "
            f"above {config.march_stability}; increase nz to at least {needed}"
        )
    kappa = mismatch(scheme.variant, *carriers, signal_direction=signal_direction)

    validity = validity_report(fields)
    warnings = [f"{check.name}: {check.condition} violated (ratio {check.ratio:.3g})"
                for check in validity if not check.passed]
    if abs(kappa) * h > options.max_phase_step:
        warnings.append(f"signal phase advances {abs(kappa) * h:.3g} rad per step; increase nz")
    for message in warnings:
        logger.warning("Propagation regime warning", detail=message)

    active = np.array([options.pump_depletion, options.pump_depletion, True, True])
    inputs = np.array([fields.rabi(j) for j in (1, 2, 3)] + [0.0], dtype=complex)

    if signal_direction == 1:
        envelopes = _march(lambda zz, y: np.where(active, response.derivative(zz, y), 0.0), z, inputs)
    else:
        pump_mask = active & np.array([True, True, True, False])
        drivers = _march(lambda zz, y: np.where(pump_mask, response.derivative(zz, y), 0.0), z, inputs)
        driver_at = _complex_splines(z, drivers[:, :3])

        def signal_derivative(zz: float, y: np.ndarray) -> np.ndarray:
            state = np.concatenate([driver_at(zz), y])
            return response.derivative(zz, state)[3:]

        signal = np.empty(nz, dtype=complex)
        signal[-1] = 0.0
        for i in range(nz - 1, 0, -1):
            signal[i - 1] = _rk4_step(signal_derivative, z[i], signal[i:i + 1], z[i - 1] - z[i])[0]
        envelopes = np.column_stack([drivers[:, :3], signal])

    logger.debug("Fields propagated", nz=nz, direction=signal_direction, kappa=kappa,
                 signal=abs(envelopes[0 if signal_direction == -1 else -1, 3]))
    return FieldProfiles(
        z=z,
        envelopes={j: envelopes[:, j - 1].copy() for j in FIELD_IDS},
        directions=directions,
        carriers=tuple(float(q) for q in carriers),
        signal_mismatch=float(kappa),
        signal_source=options.signal_source,
        validity=validity,
        warnings=warnings,
    )
