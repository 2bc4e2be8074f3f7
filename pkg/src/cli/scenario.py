import math
from dataclasses import dataclass
from typing import Optional
from scipy.constants import c
from src.dispersion import effective_doppler_width, eit_window
from src.medium import (
    FieldSet,
    LevelScheme,
    MediumParams,
    angular_to_wavelength,
    build_scheme,
    per_cm3,
)
from src.phasematch import (
    PhaseMatchReport,
    intensity_floor,
    plan_backscatter,
    required_chi,
    required_density,
)
from src.utils import logger
from .models import ScenarioPreset, ScenarioReport
from .presets import get_preset, preset_config


@dataclass(frozen=True)
class RunContext:
    """Everything a figure emitter needs from a completed run."""

    scheme: LevelScheme
    fields: FieldSet
    medium: MediumParams
    literal_sinc: bool = False
    plan: Optional[PhaseMatchReport] = None


def _window_density(preset: ScenarioPreset) -> float:
    """Density estimate of a preset at the EIT window edge, in m^-3."""
    gamma_r = preset.gamma_r
    coupling = preset.coupling_ratio * gamma_r
    doppler = max(preset.doppler_ratio * gamma_r, gamma_r)
    window = eit_window(coupling, gamma_r, doppler)
    k4 = 2 * math.pi / preset.lambda_signal
    return required_density(preset.lambda_ab, k4, coupling, gamma_r, -window, doppler).window_limit


def run_scenario(name: str, literal_sinc: bool = False) -> tuple[ScenarioReport, RunContext]:
    """Reproduce a published density estimate end to end and plan the backscattering run."""
    preset = get_preset(name)
    window_density = _window_density(preset)
    scheme, fields, medium = build_scheme(preset_config(preset, window_density))

    doppler = effective_doppler_width(medium)
    lambda_signal = angular_to_wavelength(fields.nu(4))
    chi_target = required_chi(angular_to_wavelength(scheme.omega_ab), lambda_signal)
    floor = intensity_floor(scheme.coherence_decay("b", "c"), doppler, scheme.dipole(2))
    plan = plan_backscatter(scheme, fields, medium, literal_sinc=literal_sinc)

    density_cm3 = per_cm3(window_density)
    exact_cm3 = None
    if plan.delta_star is not None:
        exact_cm3 = per_cm3(required_density(angular_to_wavelength(scheme.omega_ab), fields.nu(4) / c, fields.rabi(2),
                                             medium.radiative_decay, plan.delta_star, doppler).exact)
    wavelengths = {str(j): angular_to_wavelength(fields.nu(j)) for j in (1, 2, 3, 4)}
    report = ScenarioReport(
        name=preset.name,
        variant=preset.variant.value,
        provenance=preset.provenance,
        assumptions={
            "doppler_ratio": preset.doppler_ratio,
            "dispersion_factor": math.sqrt(doppler / medium.radiative_decay),
            "gamma_r_rad_s": preset.gamma_r,
            "gamma_bc_rad_s": preset.gamma_bc,
            "omega2_over_gamma_r": preset.coupling_ratio,
            "omega1_over_omega2": preset.probe_ratio,
            "omega3_over_omega2": preset.reader_ratio,
            "k4_length": fields.nu(4) / c * medium.length,
        },
        wavelengths_m=wavelengths,
        quoted_wavelengths_m=preset.quoted_wavelengths,
        chi_target=chi_target,
        density_exact_cm3=exact_cm3,
        density_window_cm3=density_cm3,
        published_density_cm3=preset.expected_density_cm3,
        relative_deviation=density_cm3 / preset.expected_density_cm3 - 1.0,
        match_class=preset.match_class,
        within_tolerance=preset.accepts(density_cm3),
        intensity_floor_rabi_sq=floor.rabi_squared,
        intensity_floor_w_m2=floor.intensity,
        plan=plan,
        notes=list(preset.notes),
    )
    logger.info(
        "Scenario evaluated",
        scenario=name,
        density_cm3=density_cm3,
        published_cm3=preset.expected_density_cm3,
        within_tolerance=report.within_tolerance,
        feasible=plan.feasible,
    )
    return report, RunContext(scheme=scheme, fields=fields, medium=medium, literal_sinc=literal_sinc, plan=plan)
