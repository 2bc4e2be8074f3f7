import json
import logging
import os
import sys
import time
from contextlib import contextmanager
from datetime import datetime, timezone
from typing import Any, Dict, Iterator, Optional

import numpy as np

LOGGER_NAME = "coherent-backscatter"
ENV_VAR_NAME = "ENVIRONMENT"
PRODUCTION_ENV = "production"
DEFAULT_ENV = "development"
TIMESTAMP_FORMAT = "%H:%M:%S.%f"
CONTEXT_ATTR = "context"


def _context_of(record: logging.LogRecord) -> Dict[str, Any]:
    return getattr(record, CONTEXT_ATTR, None) or {}


def to_jsonable(value: Any) -> Any:
    """Plain JSON value for a log context entry; arrays are summarised, not dumped."""
    if isinstance(value, (bool, int, float, str)) or value is None:
        return value
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if isinstance(value, np.generic):
        return to_jsonable(value.item())
    if isinstance(value, np.ndarray):
        return {"shape": list(value.shape), "dtype": str(value.dtype)}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    return str(value)


def short(value: Any) -> str:
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, float):
        return f"{value:.6g}"
    if isinstance(value, complex):
        return f"({value.real:.6g}{value.imag:+.6g}j)"
    if isinstance(value, np.ndarray):
        return f"array{value.shape}"
    return str(value)


class JSONFormatter(logging.Formatter):
    def format(self, record: logging.LogRecord) -> str:
        log_data = {
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
            "module": record.module,
            "line": record.lineno,
        }
        if record.exc_info:
            log_data["exception"] = self.formatException(record.exc_info)
        log_data.update({key: to_jsonable(value) for key, value in _context_of(record).items()})
        return json.dumps(log_data)


class ColoredFormatter(logging.Formatter):
    COLORS = {
        "DEBUG": "\033[36m",
        "INFO": "\033[32m",
        "WARNING": "\033[33m",
        "ERROR": "\033[31m",
        "CRITICAL": "\033[35m",
    }
    RESET = "\033[0m"

    def format(self, record: logging.LogRecord) -> str:
        color = self.COLORS.get(record.levelname, self.RESET)
        timestamp = datetime.fromtimestamp(record.created).strftime(TIMESTAMP_FORMAT)[:-3]
        line = f"{color}{timestamp} {record.levelname:<8}{self.RESET} {record.module}:{record.lineno} {record.getMessage()}"
        context = _context_of(record)
        if context:
            line += " | " + " ".join(f"{key}={short(value)}" for key, value in context.items())
        if record.exc_info:
            line += f"\n{self.formatException(record.exc_info)}"
        return line


class BackscatterLogger:
    """Process-wide logger taking keyword context: ``logger.info("Solved", residual=1e-14)``."""

    _instance: Optional["BackscatterLogger"] = None
    _initialized = False

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __init__(self):
        if self._initialized:
            return

        self.logger_name = LOGGER_NAME
        self.logger = logging.getLogger(self.logger_name)
        self.logger.setLevel(logging.DEBUG)
        if not self.logger.handlers:
            self._setup_handlers()
        self._initialized = True

    def _setup_handlers(self):
        formatter = JSONFormatter() if self._is_production() else ColoredFormatter()
        # stdout carries the CLI's own tables, so diagnostics go to stderr
        handler = logging.StreamHandler(sys.stderr)
        handler.setLevel(logging.DEBUG)
        handler.setFormatter(formatter)
        self.logger.addHandler(handler)

    def _is_production(self) -> bool:
        return os.getenv(ENV_VAR_NAME, DEFAULT_ENV).lower() == PRODUCTION_ENV

    def log(self, level: int, message: str, exc_info: Any = None, **context: Any) -> None:
        self.logger.log(level, message, extra={CONTEXT_ATTR: context}, exc_info=exc_info, stacklevel=3)

    def debug(self, message: str, **context: Any) -> None:
        self.log(logging.DEBUG, message, **context)

    def info(self, message: str, **context: Any) -> None:
        self.log(logging.INFO, message, **context)

    def warning(self, message: str, **context: Any) -> None:
        self.log(logging.WARNING, message, **context)

    def error(self, message: str, **context: Any) -> None:
        self.log(logging.ERROR, message, **context)

    def exception(self, message: str, **context: Any) -> None:
        self.log(logging.ERROR, message, exc_info=True, **context)

    @contextmanager
    def timed(self, message: str, level: int = logging.DEBUG, **context: Any) -> Iterator[Dict[str, Any]]:
        """Log ``message`` with ``elapsed_s`` when the block exits, raising or not.

        The yielded dict adds context; a block that raises is logged with ``failed=True``.
        """
        extra: Dict[str, Any] = {}
        start = time.perf_counter()
        try:
            yield extra
        except BaseException:
            extra["failed"] = True
            raise
        finally:
            self.logger.log(
                level,
                message,
                extra={CONTEXT_ATTR: {**context, **extra, "elapsed_s": time.perf_counter() - start}},
                stacklevel=3,
            )

    def get_logger(self, name: Optional[str] = None) -> logging.Logger:
        return logging.getLogger(f"{self.logger_name}.{name}") if name else self.logger

    def set_level(self, level: str) -> None:
        log_level = logging.getLevelName(level.upper())
        if not isinstance(log_level, int):
            log_level = logging.INFO
        self.logger.setLevel(log_level)
        for handler in self.logger.handlers:
            if handler.level > log_level:
                handler.setLevel(log_level)


logger = BackscatterLogger()


def get_logger(name: Optional[str] = None) -> logging.Logger:
    return logger.get_logger(name)
