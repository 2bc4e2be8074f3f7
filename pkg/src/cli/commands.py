import argparse
from pathlib import Path
from typing import Any, Callable, Optional
import pandas as pd
from pydantic import ValidationError
from src.bloch import steady_state
from src.config import config
from src.dispersion import default_detuning_grid, dispersion_frame, dispersion_scan
from src.medium import LEVELS, BackscatterError, ConfigError, build_scheme, load_config
from src.phasematch import InfeasiblePlanError, plan_backscatter
from src.propagation import PropagationOptions, propagate_fields
from src.utils import logger
from .figures import FIGURES, emit_figure_data
from .models import PIPELINES, SweepSpec
from .output import write_json, write_manifest, write_table
from .presets import PRESETS
from .scenario import RunContext, run_scenario
from .sweep import run_sweep


class CommandResult:
    def __init__(self, outputs: list[Path], inputs: dict[str, Any], context: Optional[RunContext] = None,
                 error: Optional[BackscatterError] = None):
        self.outputs = outputs
        self.inputs = inputs
        self.context = context
        self.error = error


# =============================================================================
# Parser
# =============================================================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coherent-backscatter",
        description="Four-level Maxwell-Bloch simulator for EIT-assisted coherent backscattering",
    )
    parser.add_argument("--config", type=Path, help="JSON simulation config")
    parser.add_argument("--out", type=Path, default=None, help="output directory")
    parser.add_argument("--format", choices=("csv", "json"), default="csv", dest="fmt")
    parser.add_argument("--grid", type=int, default=None, help="propagation grid size nz (>= 64)")
    parser.add_argument("--paper-literal-envelope", action="store_true", dest="literal_sinc",
                        help="use sin(kappa L)/(kappa L) instead of the integrated envelope")
    parser.add_argument("--figure", action="append", choices=FIGURES, default=[],
                        help="also write figure data for the run (repeatable)")

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("steady-state", help="steady-state density matrix")

    scan = sub.add_parser("dispersion-scan", help="probe dispersion across the EIT window")
    scan.add_argument("--points", type=int, default=201)
    scan.add_argument("--span", type=float, default=2.0, help="half-width in EIT windows")

    sub.add_parser("plan", help="backward phase-matching planner")

    prop = sub.add_parser("propagate", help="march the four fields along z")
    prop.add_argument("--direction", type=int, choices=(1, -1), default=None)
    prop.add_argument("--depletion", action="store_true", help="let fields 1 and 2 deplete")
    prop.add_argument("--source", choices=("db", "dc"), default="db")

    scenario = sub.add_parser("scenario", help="reproduce a published density estimate")
    scenario.add_argument("name", nargs="?", choices=sorted(PRESETS))
    scenario.add_argument("--all", action="store_true", dest="run_all")

    sweep = sub.add_parser("sweep", help="parameter sweep over one config value")
    sweep.add_argument("--parameter", required=True, help="dotted config path, e.g. medium.density.value")
    sweep.add_argument("--start", type=float, required=True)
    sweep.add_argument("--stop", type=float, required=True)
    sweep.add_argument("--count", type=int, required=True)
    sweep.add_argument("--spacing", choices=("linear", "log"), default="linear")
    sweep.add_argument("--pipeline", choices=PIPELINES, required=True)
    sweep.add_argument("--outputs", default=None, help="comma-separated output columns")
    return parser


# =============================================================================
# Commands
# =============================================================================

def _require_config(args: argparse.Namespace) -> dict[str, Any]:
    if args.config is None:
        raise ConfigError(f"{args.command} needs --config <path>")
    return load_config(args.config).model_dump(mode="json")


def _context(args: argparse.Namespace, raw: dict[str, Any]) -> RunContext:
    scheme, fields, medium = build_scheme(raw)
    return RunContext(scheme=scheme, fields=fields, medium=medium, literal_sinc=args.literal_sinc)


def _steady_state(args, out: Path) -> CommandResult:
    raw = _require_config(args)
    context = _context(args, raw)
    rho = steady_state(context.scheme, context.fields, context.medium)
    rows = [
        {"row": x, "col": y, "re": rho.element(x, y).real, "im": rho.element(x, y).imag}
        for x in LEVELS for y in LEVELS
    ]
    if args.fmt == "json":
        path = write_json({"populations": rho.populations, "elements": rows, "trace": rho.trace.real},
                          out / "steady_state.json")
    else:
        path = write_table(pd.DataFrame(rows), out, "steady_state", "csv")
    return CommandResult([path], {"config": raw}, context)


def _dispersion_scan(args, out: Path) -> CommandResult:
    raw = _require_config(args)
    context = _context(args, raw)
    deltas = default_detuning_grid(context.fields, context.medium, args.points, args.span)
    samples = dispersion_scan(context.scheme, context.fields, context.medium, deltas)
    path = write_table(dispersion_frame(samples), out, "dispersion", args.fmt)
    return CommandResult([path], {"config": raw, "points": args.points, "span": args.span}, context)


def _plan(args, out: Path) -> CommandResult:
    raw = _require_config(args)
    context = _context(args, raw)
    report = plan_backscatter(context.scheme, context.fields, context.medium, args.literal_sinc)
    if args.fmt == "json":
        path = write_json(report.model_dump(), out / "plan.json")
    else:
        path = write_table(pd.DataFrame([report.model_dump()]), out, "plan", "csv")
    error = None if report.feasible else InfeasiblePlanError(report)
    return CommandResult([path], {"config": raw}, context, error)


def _propagate(args, out: Path) -> CommandResult:
    raw = _require_config(args)
    context = _context(args, raw)
    nz = args.grid if args.grid is not None else config.grid
    options = PropagationOptions(pump_depletion=args.depletion, signal_source=args.source,
                                 signal_direction=args.direction)
    profiles = propagate_fields(context.scheme, context.fields, context.medium, nz, options)
    table = write_table(profiles.to_frame(), out, "profiles", args.fmt)
    summary = write_json(profiles.summary(), out / "propagation_summary.json")
    inputs = {"config": raw, "grid": nz, "options": options.model_dump()}
    return CommandResult([table, summary], inputs, context)


def _scenario(args, out: Path) -> CommandResult:
    if args.run_all == (args.name is not None):
        raise ConfigError(f"scenario needs exactly one of a name or --all; valid names: {sorted(PRESETS)}")
    names = sorted(PRESETS) if args.run_all else [args.name]
    outputs, context = [], None
    for name in names:
        report, context = run_scenario(name, literal_sinc=args.literal_sinc)
        outputs.append(write_json(report.model_dump(), out / f"scenario_{name}.json"))
    return CommandResult(outputs, {"scenarios": names}, context if len(names) == 1 else None)


def _sweep(args, out: Path) -> CommandResult:
    raw = _require_config(args)
    try:
        spec = SweepSpec(
            parameter=args.parameter,
            start=args.start,
            stop=args.stop,
            count=args.count,
            spacing=args.spacing,
            pipeline=args.pipeline,
            outputs=[c.strip() for c in args.outputs.split(",")] if args.outputs else None,
        )
    except ValidationError as e:
        raise ConfigError(f"invalid sweep: {e}") from e
    frame = run_sweep(spec, raw, nz=args.grid, literal_sinc=args.literal_sinc)
    path = write_table(frame, out, "sweep", args.fmt)
    return CommandResult([path], {"config": raw, "sweep": spec.model_dump()}, _context(args, raw))


COMMANDS: dict[str, Callable[[argparse.Namespace, Path], CommandResult]] = {
    "steady-state": _steady_state,
    "dispersion-scan": _dispersion_scan,
    "plan": _plan,
    "propagate": _propagate,
    "scenario": _scenario,
    "sweep": _sweep,
}


def run(argv: Optional[list[str]] = None) -> int:
    """Parse ``argv``, run the command and return the process exit code."""
    args = build_parser().parse_args(argv)
    out = args.out if args.out is not None else config.output_dir
    try:
        if args.grid is not None and args.grid < 64:
            raise ConfigError(f"--grid must be >= 64, got {args.grid}")
        result = COMMANDS[args.command](args, out)
        for figure in args.figure:
            result.outputs.append(emit_figure_data(figure, result.context, out))
        inputs = {**result.inputs, "argv": list(argv) if argv is not None else None, "grid": args.grid,
                  "literal_sinc": args.literal_sinc}
        write_manifest(out, args.command, inputs, result.outputs)
        if result.error is not None:
            raise result.error
    except BackscatterError as e:
        logger.error("Command failed", command=args.command, error=str(e), exit_code=e.exit_code)
        return e.exit_code
    logger.info("Command complete", command=args.command, outputs=[str(p) for p in result.outputs])
    return 0
