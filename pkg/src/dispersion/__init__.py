from .models import DISPERSION_COLUMNS, DispersionSample, DispersionSingularityError
from .susceptibility import (
    default_detuning_grid,
    dispersion_frame,
    dispersion_sample,
    dispersion_scan,
    dispersive_shift,
    doppler_susceptibility,
    effective_doppler_width,
    eit_window,
    field1_frequency,
    fill_wavevectors,
    group_velocity,
    group_velocity_at,
    medium_eit_window,
    susceptibility,
    wavevector,
)

__all__ = [
    "DISPERSION_COLUMNS",
    "DispersionSample",
    "DispersionSingularityError",
    "default_detuning_grid",
    "dispersion_frame",
    "dispersion_sample",
    "dispersion_scan",
    "dispersive_shift",
    "doppler_susceptibility",
    "effective_doppler_width",
    "eit_window",
    "field1_frequency",
    "fill_wavevectors",
    "group_velocity",
    "group_velocity_at",
    "medium_eit_window",
    "susceptibility",
    "wavevector",
]
