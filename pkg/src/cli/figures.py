from pathlib import Path
from typing import Literal, Optional
import numpy as np
import pandas as pd
from src.dispersion import default_detuning_grid, medium_eit_window, susceptibility, wavevector
from src.medium import ConfigError
from src.phasematch import envelope, signal_mismatches
from .output import write_table
from .scenario import RunContext

FIGURES = ("dispersion_curve", "envelope_curve", "backward_contrast")
FIGURE_POINTS = 401

Figure = Literal["dispersion_curve", "envelope_curve", "backward_contrast"]


def dispersion_curve(context: RunContext, points: int = FIGURE_POINTS) -> pd.DataFrame:
    scheme, fields, medium = context.scheme, context.fields, context.medium
    deltas = default_detuning_grid(fields, medium, points)
    nus = scheme.omega_ab + deltas
    ks = [wavevector(nu, susceptibility(scheme, fields, medium, d))[0] for nu, d in zip(nus, deltas)]
    return pd.DataFrame({"nu_rad_s": nus, "k_rad_m": ks})


def envelope_curve(context: RunContext, points: int = FIGURE_POINTS) -> pd.DataFrame:
    length = context.medium.length
    kappas = np.linspace(-8 * np.pi / length, 8 * np.pi / length, points)
    values = [abs(envelope(k, length, context.literal_sinc)) for k in kappas]
    return pd.DataFrame({"kappa_rad_m": kappas, "envelope_abs": values})


def backward_contrast(context: RunContext, points: int = FIGURE_POINTS) -> pd.DataFrame:
    """Backward-to-forward envelope ratio across the red half of the EIT window."""
    scheme, fields, medium = context.scheme, context.fields, context.medium
    deltas = np.linspace(-medium_eit_window(fields, medium), 0.0, points)
    contrast = []
    for delta in deltas:
        kappa_forward, kappa_backward = signal_mismatches(scheme, fields, medium, float(delta))
        backward = abs(envelope(kappa_backward, medium.length, context.literal_sinc))
        forward = abs(envelope(kappa_forward, medium.length, context.literal_sinc))
        contrast.append(backward / forward if forward > 0 else np.inf)
    return pd.DataFrame({"delta_rad_s": deltas, "contrast": contrast})


_BUILDERS = {
    "dispersion_curve": dispersion_curve,
    "envelope_curve": envelope_curve,
    "backward_contrast": backward_contrast,
}


def emit_figure_data(which: Figure, context: Optional[RunContext], out_dir: Path) -> Path:
    """Write the plottable two-column CSV for one figure."""
    if context is None:
        raise ConfigError("figure data needs a completed run context (a config or a scenario)")
    if which not in _BUILDERS:
        raise ConfigError(f"unknown figure {which!r}; valid figures: {list(FIGURES)}")
    return write_table(_BUILDERS[which](context), out_dir, which, "csv")
