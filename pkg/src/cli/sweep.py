import copy
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Optional
import numpy as np
import pandas as pd
from src.config import config
from src.dispersion import dispersion_sample, fill_wavevectors
from src.medium import ConfigError, SimulationConfig, build_scheme
from src.phasematch import envelope, mismatch, plan_backscatter
from src.propagation import PropagationOptions, propagate_fields
from src.utils import logger
from .models import SweepSpec

KAPPA_PARAMETER = "kappa"


def sweep_values(spec: SweepSpec) -> np.ndarray:
    if spec.spacing == "log":
        return np.geomspace(spec.start, spec.stop, spec.count)
    return np.linspace(spec.start, spec.stop, spec.count)


def set_parameter(raw: dict[str, Any], path: str, value: float) -> dict[str, Any]:
    """Copy of ``raw`` with the dotted ``path`` set to ``value``."""
    updated = copy.deepcopy(raw)
    node = updated
    parts = path.split(".")
    for depth, part in enumerate(parts):
        if not isinstance(node, dict) or part not in node:
            valid = sorted(node) if isinstance(node, dict) else []
            where = ".".join(parts[:depth]) or "<root>"
            raise ConfigError(f"sweep path {path!r} does not resolve at {where!r}; valid keys: {valid}")
        if depth == len(parts) - 1:
            if isinstance(node[part], (dict, list)):
                raise ConfigError(f"sweep path {path!r} names a section, not a number; "
                                  f"valid keys: {sorted(node[part]) if isinstance(node[part], dict) else []}")
            node[part] = float(value)
        else:
            node = node[part]
    return updated


def _evaluate(spec: SweepSpec, raw: dict[str, Any], value: float, nz: int, literal_sinc: bool) -> dict[str, Any]:
    if spec.pipeline == "envelope-scan" and spec.parameter == KAPPA_PARAMETER:
        scheme, fields, medium = build_scheme(raw)
        kappa = value
    else:
        scheme, fields, medium = build_scheme(set_parameter(raw, spec.parameter, value))
        kappa = None

    if spec.pipeline == "dispersion-scan":
        return dispersion_sample(scheme, fields, medium, fields.nu(1) - scheme.omega_ab).as_row()
    if spec.pipeline == "envelope-scan":
        if kappa is None:
            k = fill_wavevectors(scheme, fields, medium).wavevectors
            kappa = mismatch(scheme.variant, *k, signal_direction=fields.direction(4))
        factor = envelope(kappa, medium.length, literal_sinc)
        return {"kappa_rad_m": kappa, "envelope_abs": abs(factor), "envelope_phase": float(np.angle(factor))}
    if spec.pipeline == "planner-scan":
        return plan_backscatter(scheme, fields, medium, literal_sinc=literal_sinc).model_dump()
    profiles = propagate_fields(scheme, fields, medium, nz, PropagationOptions())
    summary = profiles.summary()
    return {
        "signal_output_abs": summary["signal_output_abs"],
        "signal_mismatch_rad_m": summary["signal_mismatch_rad_m"],
        "warnings": len(summary["warnings"]),
    }


def run_sweep(
    spec: SweepSpec,
    base: SimulationConfig | dict[str, Any],
    nz: Optional[int] = None,
    literal_sinc: bool = False,
) -> pd.DataFrame:
    """Evaluate ``spec.pipeline`` at every sweep point; rows follow the sweep order."""
    raw = base.model_dump(mode="json") if isinstance(base, SimulationConfig) else copy.deepcopy(base)
    if spec.parameter != KAPPA_PARAMETER or spec.pipeline != "envelope-scan":
        set_parameter(raw, spec.parameter, 0.0)
    nz = config.grid if nz is None else nz
    values = sweep_values(spec)

    with logger.timed("Sweep evaluated", level=logging.INFO, parameter=spec.parameter, pipeline=spec.pipeline,
                      points=len(values), workers=config.workers):
        with ThreadPoolExecutor(max_workers=config.workers) as executor:
            rows = list(executor.map(lambda v: _evaluate(spec, raw, float(v), nz, literal_sinc), values))

    frame = pd.DataFrame(rows)
    frame.insert(0, spec.parameter, values)
    frame.insert(0, "index", np.arange(len(values)))
    if spec.outputs:
        unknown = sorted(set(spec.outputs) - set(frame.columns))
        if unknown:
            raise ConfigError(f"unknown sweep outputs {unknown}; available: {list(frame.columns)}")
        frame = frame[["index", spec.parameter, *[c for c in spec.outputs if c not in ("index", spec.parameter)]]]
    return frame
