from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.interpolate import RectBivariateSpline

from ..errors import ConfigurationError, DomainError
from .geometry import ConeConfig
from .symbol import QuadParams, evaluate_log_radial

__all__ = (
    "RadialTable",
    "build_radial_table",
    "interpolate_lambda",
    "interpolate_mu",
    "interpolate_mu_complement",
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class RadialTable:
    """lambda and mu on an (s, rho) grid, stored and interpolated on the log scale.

    Log storage keeps the relative accuracy of the interpolant where lambda,
    mu or 1 - mu are many orders of magnitude below one.
    """

    s_grid: np.ndarray
    rho_grid: np.ndarray
    log_lambda: np.ndarray = field(repr=False)
    log_mu: np.ndarray = field(repr=False)
    log_mu_complement: np.ndarray = field(repr=False)
    config: ConeConfig = field(default_factory=ConeConfig)

    def __post_init__(self) -> None:
        for name in ("s_grid", "rho_grid"):
            grid = np.asarray(getattr(self, name), dtype=float)
            if grid.ndim != 1 or grid.size < 2 or np.any(np.diff(grid) <= 0):
                raise ConfigurationError(f"{name} must be strictly increasing with >= 2 points")
            object.__setattr__(self, name, grid)
        if self.rho_grid[0] < 0:
            raise ConfigurationError("rho_grid must be >= 0")
        shape = (self.s_grid.size, self.rho_grid.size)
        for name in ("log_lambda", "log_mu", "log_mu_complement"):
            values = np.array(getattr(self, name), dtype=float)
            if values.shape != shape:
                raise ConfigurationError(f"{name} has shape {values.shape}, expected {shape}")
            if not np.all(np.isfinite(values)):
                raise ConfigurationError(f"{name} has non-finite entries (value <= 0)")
            if name != "log_lambda":
                if np.any(values > 1e-12):
                    raise ConfigurationError(f"{name} must stay below 0 (mu in (0, 1))")
                values = np.minimum(values, 0.0)
            values.setflags(write=False)
            object.__setattr__(self, name, values)

    @property
    def lambda_values(self) -> np.ndarray:
        return np.exp(self.log_lambda)

    @property
    def mu_values(self) -> np.ndarray:
        return np.exp(self.log_mu)

    @property
    def mu_complement_values(self) -> np.ndarray:
        return np.exp(self.log_mu_complement)

    @property
    def hull(self) -> tuple[tuple[float, float], tuple[float, float]]:
        return (
            (float(self.s_grid[0]), float(self.s_grid[-1])),
            (float(self.rho_grid[0]), float(self.rho_grid[-1])),
        )

    def contains(self, s: np.ndarray, rho: np.ndarray) -> np.ndarray:
        (s_lo, s_hi), (r_lo, r_hi) = self.hull
        s, rho = np.asarray(s), np.asarray(rho)
        return (s >= s_lo) & (s <= s_hi) & (rho >= r_lo) & (rho <= r_hi)

    def _spline(self, values: np.ndarray) -> RectBivariateSpline:
        # bicubic where the grid allows it, bilinear on axes with < 4 points
        kx = 3 if self.s_grid.size >= 4 else 1
        ky = 3 if self.rho_grid.size >= 4 else 1
        return RectBivariateSpline(self.s_grid, self.rho_grid, values, kx=kx, ky=ky)

    @cached_property
    def splines(self) -> dict[str, RectBivariateSpline]:
        return {
            "lambda": self._spline(self.log_lambda),
            "mu": self._spline(self.log_mu),
            "mu_complement": self._spline(self.log_mu_complement),
        }

    def interpolate(self, kind: str, s: np.ndarray | float, rho: np.ndarray | float):
        s_arr = np.asarray(s, dtype=float)
        rho_arr = np.asarray(rho, dtype=float)
        if not np.all(self.contains(s_arr, rho_arr)):
            raise DomainError(f"query outside the table hull {self.hull}")
        values = np.exp(self.splines[kind].ev(s_arr, rho_arr))
        if kind != "lambda":
            values = np.minimum(values, 1.0)
        return float(values) if values.ndim == 0 else values


def build_radial_table(
    s_grid: np.ndarray,
    rho_grid: np.ndarray,
    cfg: ConeConfig | None = None,
    qp: QuadParams | None = None,
) -> RadialTable:
    cfg = cfg or ConeConfig()
    s_grid = np.asarray(s_grid, dtype=float)
    rho_grid = np.asarray(rho_grid, dtype=float)
    ss, rr = np.meshgrid(s_grid, rho_grid, indexing="ij")
    started = time.perf_counter()
    logs = evaluate_log_radial(ss.ravel(), rr.ravel(), cfg, qp)
    logger.debug(
        "radial table %dx%d built in %.2fs",
        s_grid.size,
        rho_grid.size,
        time.perf_counter() - started,
    )
    return RadialTable(
        s_grid=s_grid,
        rho_grid=rho_grid,
        log_lambda=logs["lambda"].reshape(ss.shape),
        log_mu=logs["mu"].reshape(ss.shape),
        log_mu_complement=logs["mu_complement"].reshape(ss.shape),
        config=cfg,
    )


def interpolate_lambda(table: RadialTable, s, rho):
    return table.interpolate("lambda", s, rho)


def interpolate_mu(table: RadialTable, s, rho):
    return table.interpolate("mu", s, rho)


def interpolate_mu_complement(table: RadialTable, s, rho):
    return table.interpolate("mu_complement", s, rho)
