from __future__ import annotations

import logging
import math
import os
from pathlib import Path

import numpy as np
from rich.console import Console
from rich.logging import RichHandler

from .errors import ConfigurationError

console = Console()

LOG_LEVEL_ENV = "TWOPROJ_LOG_LEVEL"
OUTPUT_DIR_ENV = "TWOPROJ_OUTPUT_DIR"


def setup_logging(level: str | None = None) -> None:
    """Route the package loggers through rich; level from TWOPROJ_LOG_LEVEL."""
    name = (level or os.environ.get(LOG_LEVEL_ENV) or "WARNING").upper()
    logger = logging.getLogger("twoproj_cli")
    logger.setLevel(getattr(logging, name, logging.WARNING))
    if not any(isinstance(h, RichHandler) for h in logger.handlers):
        logger.addHandler(RichHandler(console=console, show_path=False, markup=False))
    logger.propagate = False


def parse_range(text: str) -> np.ndarray:
    """Parse `min:max:step` (max inclusive), or a single value."""
    parts = text.split(":")
    try:
        values = [float(x) for x in parts]
    except ValueError:
        raise ConfigurationError(f"invalid range {text!r}, expected min:max:step") from None
    if len(values) == 1:
        return np.array(values)
    if len(values) != 3:
        raise ConfigurationError(f"invalid range {text!r}, expected min:max:step")
    lo, hi, step = values
    if step <= 0 or hi < lo:
        raise ConfigurationError(f"range {text!r} needs max >= min and step > 0")
    count = math.floor((hi - lo) / step + 1e-9) + 1
    return lo + step * np.arange(count)


def parse_floats(text: str) -> list[float]:
    """Parse a comma-separated list of numbers."""
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ConfigurationError(f"invalid number list {text!r}") from None


def parse_xi(text: str) -> tuple[float, float, float, float]:
    """Parse a four-momentum given as `xi0,xi1,xi2,xi3` (missing trailing components are 0)."""
    values = parse_floats(text)
    if not 1 <= len(values) <= 4:
        raise ConfigurationError(f"a four-momentum has 1 to 4 components, got {text!r}")
    return tuple(values + [0.0] * (4 - len(values)))  # type: ignore[return-value]


def resolve_output_dir(output: str | None) -> Path:
    """TWOPROJ_OUTPUT_DIR wins over the flag; the default is the working directory."""
    path = Path(os.environ.get(OUTPUT_DIR_ENV) or output or ".")
    path.mkdir(parents=True, exist_ok=True)
    return path
