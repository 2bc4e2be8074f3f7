from .marching import propagate_fields
from .models import FieldProfiles, PropagationError, PropagationOptions, RefinementError, ValidityCheck
from .quadrature import oscillatory_integral, quadrature_signal
from .validity import validity_report

__all__ = [
    "propagate_fields",
    "FieldProfiles",
    "PropagationError",
    "PropagationOptions",
    "RefinementError",
    "ValidityCheck",
    "oscillatory_integral",
    "quadrature_signal",
    "validity_report",
]
