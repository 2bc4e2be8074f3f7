from .commands import build_parser, run
from .figures import FIGURES, emit_figure_data
from .models import PIPELINES, ScenarioPreset, ScenarioReport, SweepSpec
from .output import write_json, write_manifest, write_table
from .presets import PRESETS, get_preset, preset_config
from .scenario import RunContext, run_scenario
from .sweep import run_sweep, set_parameter, sweep_values

__all__ = [
    "build_parser",
    "run",
    "FIGURES",
    "emit_figure_data",
    "PIPELINES",
    "ScenarioPreset",
    "ScenarioReport",
    "SweepSpec",
    "write_json",
    "write_manifest",
    "write_table",
    "PRESETS",
    "get_preset",
    "preset_config",
    "RunContext",
    "run_scenario",
    "run_sweep",
    "set_parameter",
    "sweep_values",
]
