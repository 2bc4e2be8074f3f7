import json
import platform
import sys
from datetime import datetime, timezone
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path
from typing import Any
import numpy as np
import pandas as pd
from src.config import config
from src.utils import logger

TRACKED_PACKAGES = ("coherent-backscatter", "numpy", "scipy", "pandas", "pydantic", "python-dotenv")


def _json_default(value: Any) -> Any:
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, Path):
        return str(value)
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")


def write_json(data: Any, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(data, indent=2, default=_json_default), encoding="utf-8")
    logger.info("Wrote JSON", path=str(path))
    return path


def write_table(frame: pd.DataFrame, out_dir: Path, stem: str, fmt: str = "csv") -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    if fmt == "json":
        path = out_dir / f"{stem}.json"
        frame.to_json(path, orient="records", indent=2)
    else:
        path = out_dir / f"{stem}.csv"
        frame.to_csv(path, index=False, float_format="%.17g")
    logger.info("Wrote table", path=str(path), rows=len(frame))
    return path


def package_versions() -> dict[str, str]:
    versions = {}
    for package in TRACKED_PACKAGES:
        try:
            versions[package] = version(package)
        except PackageNotFoundError:
            versions[package] = "unknown"
    return versions


def write_manifest(out_dir: Path, command: str, inputs: dict[str, Any], outputs: list[Path]) -> Path:
    """Record what produced the files in ``out_dir``."""
    manifest = {
        "command": command,
        "created_at": datetime.now(timezone.utc).isoformat(),
        "python": sys.version.split()[0],
        "platform": platform.platform(),
        "packages": package_versions(),
        "settings": config.snapshot(),
        "inputs": inputs,
        "outputs": [path.name for path in outputs],
    }
    return write_json(manifest, out_dir / "manifest.json")
