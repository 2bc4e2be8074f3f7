import math
from typing import Literal, Optional
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from src.medium import Variant
from src.phasematch import PhaseMatchReport

PIPELINES = ("dispersion-scan", "envelope-scan", "planner-scan", "propagate")


class ScenarioPreset(BaseModel):
    """Parameter set behind one of the published density estimates."""

    model_config = ConfigDict(frozen=True)

    name: str
    variant: Variant
    species: str
    lambda_ab: float = Field(gt=0.0)
    lambda_signal: float = Field(gt=0.0)
    lambda_coupling: Optional[float] = Field(default=None, gt=0.0)
    quoted_wavelengths: dict[str, float] = Field(default_factory=dict)
    doppler_ratio: float = Field(ge=1.0)
    gamma_r: float = Field(gt=0.0)
    gamma_bc: float = Field(ge=0.0)
    coupling_ratio: float = Field(gt=0.0)
    probe_ratio: float = Field(default=1e-3, gt=0.0)
    reader_ratio: float = Field(default=0.1, gt=0.0)
    length_in_signal_wavelengths: float = Field(default=50.0, gt=0.0)
    expected_density_cm3: float = Field(gt=0.0)
    tolerance: float = Field(gt=0.0)
    tolerance_kind: Literal["relative", "factor"]
    provenance: str
    notes: list[str] = Field(default_factory=list)

    @property
    def match_class(self) -> str:
        return "exact-under-assumption" if self.tolerance_kind == "relative" else "order-of-magnitude"

    def accepts(self, density_cm3: float) -> bool:
        if self.tolerance_kind == "relative":
            return abs(density_cm3 / self.expected_density_cm3 - 1.0) <= self.tolerance
        return abs(math.log10(density_cm3 / self.expected_density_cm3)) <= math.log10(self.tolerance)


class ScenarioReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    variant: str
    provenance: str
    assumptions: dict[str, float]
    wavelengths_m: dict[str, float]
    quoted_wavelengths_m: dict[str, float]
    chi_target: float
    density_exact_cm3: Optional[float]
    density_window_cm3: float
    published_density_cm3: float
    relative_deviation: float
    match_class: str
    within_tolerance: bool
    intensity_floor_rabi_sq: float
    intensity_floor_w_m2: float
    plan: PhaseMatchReport
    notes: list[str]


class SweepSpec(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    parameter: str
    start: float
    stop: float
    count: int = Field(ge=2)
    spacing: Literal["linear", "log"] = "linear"
    pipeline: Literal["dispersion-scan", "envelope-scan", "planner-scan", "propagate"]
    outputs: Optional[list[str]] = None

    @field_validator("parameter")
    @classmethod
    def parameter_not_empty(cls, v: str) -> str:
        if not v.strip():
            raise ValueError("sweep parameter path cannot be empty")
        return v.strip()

    @model_validator(mode="after")
    def range_valid(self) -> "SweepSpec":
        if self.start == self.stop:
            raise ValueError("sweep start and stop must differ")
        if self.spacing == "log" and (self.start <= 0 or self.stop <= 0):
            raise ValueError("log spacing needs positive start and stop")
        return self
