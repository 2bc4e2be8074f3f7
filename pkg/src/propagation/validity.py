import math
from typing import Optional
from src.config import config
from src.medium import FieldSet
from .models import ValidityCheck


def _ratio(numerator: float, denominator: float) -> float:
    if numerator == 0.0:
        return 0.0
    if denominator == 0.0:
        return math.inf
    return numerator / denominator


def validity_report(fields: FieldSet, threshold: Optional[float] = None) -> list[ValidityCheck]:
    """Regime checks behind the perturbative signal model."""
    threshold = config.validity_threshold if threshold is None else threshold
    omega = {j: abs(fields.rabi(j)) for j in (1, 2, 3, 4)}
    return [
        ValidityCheck(
            name="power_broadening",
            condition="|Omega_3|^2 << |Omega_1|^2 + |Omega_2|^2",
            ratio=_ratio(omega[3] ** 2, omega[1] ** 2 + omega[2] ** 2),
            threshold=threshold,
        ),
        ValidityCheck(
            name="pump_hierarchy",
            condition="|Omega_1| << |Omega_2|",
            ratio=_ratio(omega[1], omega[2]),
            threshold=threshold,
        ),
        ValidityCheck(
            name="weak_signal",
            condition="|Omega_4| << |Omega_3|",
            ratio=_ratio(omega[4], omega[3]),
            threshold=threshold,
        ),
    ]
