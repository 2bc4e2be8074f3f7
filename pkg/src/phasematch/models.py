from typing import NamedTuple, Optional
from pydantic import BaseModel, ConfigDict, Field
from src.medium import BackscatterError

ENVELOPE_COLUMNS = ("kappa_rad_m", "envelope_abs", "envelope_phase")


class PhaseMatchReport(BaseModel):
    """Outcome of planning a backscattering run at the matched detuning."""

    model_config = ConfigDict(frozen=True)

    delta_k: Optional[float] = None
    kappa_forward: Optional[float] = None
    kappa_backward: Optional[float] = None
    envelope_forward: Optional[float] = Field(default=None, ge=0.0, le=1.0)
    envelope_backward: Optional[float] = Field(default=None, ge=0.0, le=1.0)
    delta_star: Optional[float] = None
    N_star: float
    chi_target: float
    feasible: bool
    reason: str


class RequiredDensity(NamedTuple):
    exact: float
    window_limit: float


class IntensityFloor(NamedTuple):
    rabi_squared: float
    intensity: float


class InfeasiblePlanError(BackscatterError):
    exit_code = 3

    def __init__(self, report: PhaseMatchReport):
        super().__init__(f"backscattering plan infeasible: {report.reason}")
        self.report = report


class SignalEstimate(NamedTuple):
    omega4: complex
    broadening_ratio: float
    power_broadened: bool
