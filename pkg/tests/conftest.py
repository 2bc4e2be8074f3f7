import cmath
import copy
import math
import os
import sys
from pathlib import Path

import pytest

project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

os.environ.setdefault("BACKSCATTER_LOGGER_LEVEL", "DEBUG")
os.environ.setdefault("BACKSCATTER_WORKERS", "2")
os.environ.setdefault("BACKSCATTER_GRID", "128")
os.environ.setdefault("BACKSCATTER_PLANNER_SCAN_POINTS", "257")

GAMMA = 2 * math.pi * 6e6
DIPOLE = 2.5e-29

# Level energies (rad/s) giving the right ordering for each variant.
LEVEL_ENERGIES = {
    "double_lambda": {"a": 2.4e15, "c": 4.3e10, "d": 2.38e15},
    "ladder_lambda": {"a": 2.4e15, "c": 3.5e14, "d": 1.8e14},
    "v_lambda": {"a": 2.4e15, "c": 5.7e15, "d": 8.0e13},
}


def rate(value: float) -> dict:
    return {"value": value, "unit": "rad/s"}


def drive(rabi: complex) -> dict:
    """Rabi magnitude and phase entries for a possibly complex Rabi frequency."""
    return {"rabi": rate(abs(rabi)), "phase": cmath.phase(rabi)}


def make_config(
    variant: str = "double_lambda",
    rabis=(1e-4 * GAMMA, GAMMA, 1e-4 * GAMMA, 0.0),
    detunings=(0.0, 0.0, 0.0),
    density: float = 1e16,
    length: float = 1e-3,
    doppler_width: float = 0.0,
    decay=None,
    dephasing=None,
    dipoles=None,
    signal_direction: int = 1,
) -> dict:
    """Raw simulation config in rad/s units for one of the three variants."""
    decay = {"a": GAMMA, "c": 0.2 * GAMMA, "d": GAMMA} if decay is None else decay
    dephasing = {"bc": 0.1 * GAMMA} if dephasing is None else dephasing
    dipoles = (DIPOLE,) * 4 if dipoles is None else dipoles
    fields = {
        str(j): {**drive(rabis[j - 1]), "detuning": rate(detunings[j - 1])} for j in (1, 2, 3)
    }
    fields["4"] = {**drive(rabis[3]), "direction": signal_direction}
    return {
        "scheme": {
            "variant": variant,
            "levels": {level: rate(energy) for level, energy in LEVEL_ENERGIES[variant].items()},
            "dipoles": {str(j): {"value": d, "unit": "C*m"} for j, d in zip((1, 2, 3, 4), dipoles)},
            "decay": {level: rate(r) for level, r in decay.items()},
            "dephasing": {pair: rate(r) for pair, r in dephasing.items()},
        },
        "fields": fields,
        "medium": {
            "density": {"value": density, "unit": "m-3"},
            "doppler_width": rate(doppler_width),
            "radiative_decay": rate(GAMMA),
            "length": {"value": length, "unit": "m"},
        },
    }


@pytest.fixture
def dl_config() -> dict:
    return copy.deepcopy(make_config())


@pytest.fixture
def dl_scheme(dl_config):
    from src.medium import build_scheme
    return build_scheme(dl_config)


@pytest.fixture
def config_file(tmp_path, dl_config) -> Path:
    import json
    path = tmp_path / "dl.json"
    path.write_text(json.dumps(dl_config), encoding="utf-8")
    return path


def window_density(name: str) -> float:
    """Density at which a preset first phase matches backwards at the EIT window edge."""
    from src.cli import get_preset
    from src.phasematch import required_density

    preset = get_preset(name)
    gamma_r = preset.gamma_r
    coupling = preset.coupling_ratio * gamma_r
    doppler = preset.doppler_ratio * gamma_r
    window = coupling**2 / math.sqrt(gamma_r * doppler)
    k4 = 2 * math.pi / preset.lambda_signal
    return required_density(preset.lambda_ab, k4, coupling, gamma_r, -window, doppler).window_limit
