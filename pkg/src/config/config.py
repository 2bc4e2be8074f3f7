import os
from pathlib import Path
from typing import Optional
from dotenv import load_dotenv
from src.utils import logger

# real-axis stability bound of classical RK4
RK4_STABILITY_LIMIT = 2.785


class Config:
    _instance: Optional["Config"] = None
    _initialized = False

    ENV_PREFIX = "BACKSCATTER_"

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __init__(self):
        if self._initialized:
            return

        self._load_env_file()
        self._load_config()
        self._initialized = True

    def _load_env_file(self):
        if Path(".env").exists():
            load_dotenv(override=False)
            logger.info("Environment variables loaded from .env file")

    def _get_env_optional(self, key: str, default: str = "") -> str:
        return os.getenv(key, default)

    def _get_int(self, name: str, default: int, minimum: int) -> int:
        key = f"{self.ENV_PREFIX}{name}"
        raw = self._get_env_optional(key, str(default))
        try:
            value = int(raw)
        except ValueError as e:
            raise ValueError(f"Environment variable {key} must be an integer, got {raw!r}") from e
        if value < minimum:
            raise ValueError(f"Environment variable {key} must be >= {minimum}, got {value}")
        return value

    def _get_float(self, name: str, default: float, lower: float, upper: float = float("inf")) -> float:
        key = f"{self.ENV_PREFIX}{name}"
        raw = self._get_env_optional(key, str(default))
        try:
            value = float(raw)
        except ValueError as e:
            raise ValueError(f"Environment variable {key} must be a number, got {raw!r}") from e
        if not lower < value < upper:
            raise ValueError(f"Environment variable {key} must lie in ({lower}, {upper}), got {value}")
        return value

    def _load_config(self):
        self.logger_level = self._get_env_optional(f"{self.ENV_PREFIX}LOGGER_LEVEL", "INFO")
        self.output_dir = Path(self._get_env_optional(f"{self.ENV_PREFIX}OUTPUT_DIR", "out"))

        self.workers = self._get_int("WORKERS", 4, 1)
        self.grid = self._get_int("GRID", 256, 64)
        self.planner_scan_points = self._get_int("PLANNER_SCAN_POINTS", 257, 8)

        self.validity_threshold = self._get_float("VALIDITY_THRESHOLD", 0.1, 0.0, 1.0)
        self.intensity_margin = self._get_float("INTENSITY_MARGIN", 10.0, 0.0)
        self.evolve_stability = self._get_float("EVOLVE_STABILITY", 0.1, 0.0, 1.0)
        self.march_stability = self._get_float("MARCH_STABILITY", 1.0, 0.0, RK4_STABILITY_LIMIT)

        logger.set_level(self.logger_level)

        logger.debug(
            "Configuration loaded successfully",
            logger_level=self.logger_level,
            output_dir=str(self.output_dir),
            workers=self.workers,
            grid=self.grid,
            validity_threshold=self.validity_threshold,
        )

    def snapshot(self) -> dict[str, object]:
        return {
            "logger_level": self.logger_level,
            "output_dir": str(self.output_dir),
            "workers": self.workers,
            "grid": self.grid,
            "planner_scan_points": self.planner_scan_points,
            "validity_threshold": self.validity_threshold,
            "intensity_margin": self.intensity_margin,
            "evolve_stability": self.evolve_stability,
            "march_stability": self.march_stability,
        }


config = Config()
