from dataclasses import dataclass, field
from typing import Any, Literal, Optional
import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field
from src.medium import FIELD_IDS, NumericalFailure


class PropagationOptions(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    pump_depletion: bool = False
    signal_source: Literal["db", "dc"] = "db"
    signal_direction: Optional[Literal[1, -1]] = None
    z_origin: float = 0.0
    max_phase_step: float = Field(default=0.5, gt=0.0)


@dataclass(frozen=True)
class ValidityCheck:
    name: str
    condition: str
    ratio: float
    threshold: float

    @property
    def passed(self) -> bool:
        return self.ratio <= self.threshold

    @property
    def status(self) -> str:
        return "pass" if self.passed else "warn"

    def as_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "condition": self.condition,
            "ratio": self.ratio,
            "threshold": self.threshold,
            "status": self.status,
        }


@dataclass(frozen=True)
class FieldProfiles:
    """Slowly varying envelopes of the four fields along z.

    ``envelopes[j][i]`` multiplies the carrier exp(i * direction_j * carrier_j * z_i).
    """

    z: np.ndarray
    envelopes: dict[int, np.ndarray]
    directions: tuple[int, int, int, int]
    carriers: tuple[float, float, float, float]
    signal_mismatch: float
    signal_source: str
    validity: list[ValidityCheck] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def length(self) -> float:
        return float(self.z[-1] - self.z[0])

    def envelope(self, j: int) -> np.ndarray:
        return self.envelopes[j]

    def full_field(self, j: int) -> np.ndarray:
        return self.envelopes[j] * np.exp(1j * self.directions[j - 1] * self.carriers[j - 1] * self.z)

    @property
    def signal_output(self) -> complex:
        """Signal envelope where it leaves the medium."""
        signal = self.envelopes[4]
        return complex(signal[-1] if self.directions[3] == 1 else signal[0])

    def to_frame(self) -> pd.DataFrame:
        columns = {"z_m": self.z}
        for j in FIELD_IDS:
            columns[f"omega{j}_re"] = self.envelopes[j].real
            columns[f"omega{j}_im"] = self.envelopes[j].imag
        return pd.DataFrame(columns)

    def summary(self) -> dict[str, Any]:
        boundary = {}
        for j in FIELD_IDS:
            entry, exit_ = (0, -1) if self.directions[j - 1] == 1 else (-1, 0)
            boundary[str(j)] = {
                "direction": self.directions[j - 1],
                "input_abs": float(abs(self.envelopes[j][entry])),
                "output_abs": float(abs(self.envelopes[j][exit_])),
                "output_phase": float(np.angle(self.envelopes[j][exit_])),
            }
        return {
            "nz": int(self.z.size),
            "length_m": self.length,
            "signal_source": self.signal_source,
            "signal_mismatch_rad_m": self.signal_mismatch,
            "signal_output_abs": abs(self.signal_output),
            "boundary": boundary,
            "validity": [check.as_dict() for check in self.validity],
            "warnings": list(self.warnings),
        }


class PropagationError(NumericalFailure):
    def __init__(self, message: str, z: float):
        super().__init__(f"{message} at z={z:.6e} m")
        self.z = z


class RefinementError(NumericalFailure):
    pass
