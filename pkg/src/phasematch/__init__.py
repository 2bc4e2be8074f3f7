from .matching import (
    coherence_wavevector,
    envelope,
    envelope_scan,
    mismatch,
    power_broadening_ratio,
    signal_closed_form,
    signal_estimate,
)
from .models import (
    ENVELOPE_COLUMNS,
    InfeasiblePlanError,
    IntensityFloor,
    PhaseMatchReport,
    RequiredDensity,
    SignalEstimate,
)
from .planner import (
    backward_mismatch,
    grating_wavevector,
    intensity_floor,
    linear_detuning_estimate,
    plan_backscatter,
    required_chi,
    required_density,
    resonance_shift,
    signal_mismatches,
    wavevectors_at,
)

__all__ = [
    "coherence_wavevector",
    "envelope",
    "envelope_scan",
    "mismatch",
    "power_broadening_ratio",
    "signal_closed_form",
    "signal_estimate",
    "ENVELOPE_COLUMNS",
    "InfeasiblePlanError",
    "IntensityFloor",
    "PhaseMatchReport",
    "RequiredDensity",
    "SignalEstimate",
    "backward_mismatch",
    "grating_wavevector",
    "intensity_floor",
    "linear_detuning_estimate",
    "plan_backscatter",
    "required_chi",
    "required_density",
    "resonance_shift",
    "signal_mismatches",
    "wavevectors_at",
]
