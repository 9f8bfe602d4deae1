from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..errors import ConfigurationError

__all__ = (
    "ConeConfig",
    "FourMomentum",
    "Orientation",
    "boost",
    "chi_cone",
    "cone_indicator",
    "minkowski_form",
    "minkowski_q",
)


class Orientation(Enum):
    FUTURE = "future"
    PAST = "past"


@dataclass(frozen=True)
class FourMomentum:
    """A point (xi_0, xi_1, xi_2, xi_3) of momentum space."""

    xi: tuple[float, float, float, float]

    def __post_init__(self) -> None:
        values = tuple(float(v) for v in self.xi)
        if len(values) != 4:
            raise ConfigurationError(f"a four-momentum needs 4 components, got {len(values)}")
        if not all(math.isfinite(v) for v in values):
            raise ConfigurationError(f"four-momentum components must be finite: {values}")
        object.__setattr__(self, "xi", values)

    @classmethod
    def of(cls, *components: float) -> FourMomentum:
        padded = list(components) + [0.0] * (4 - len(components))
        return cls(tuple(padded))  # type: ignore[arg-type]

    @property
    def time(self) -> float:
        return self.xi[0]

    @property
    def spatial_norm(self) -> float:
        return math.hypot(*self.xi[1:])

    @property
    def radial(self) -> tuple[float, float]:
        """(s, rho) = (xi_0, |xi_vec|), the only variables the cone symbols see."""
        return self.xi[0], self.spatial_norm

    def scaled(self, t: float) -> FourMomentum:
        return FourMomentum(tuple(t * v for v in self.xi))  # type: ignore[arg-type]

    def as_array(self) -> np.ndarray:
        return np.array(self.xi)


@dataclass(frozen=True)
class ConeConfig:
    """Units and cone orientation; natural units hbar = c = 1 by default."""

    m: float = 1.0
    c: float = 1.0
    hbar: float = 1.0
    orientation: Orientation = Orientation.FUTURE

    def __post_init__(self) -> None:
        for name in ("m", "c", "hbar"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0.0):
                raise ConfigurationError(f"{name} must be strictly positive, got {value}")
        if isinstance(self.orientation, str):
            try:
                object.__setattr__(self, "orientation", Orientation(self.orientation.lower()))
            except ValueError:
                raise ConfigurationError(
                    f"orientation must be 'future' or 'past', got {self.orientation!r}"
                ) from None

    @property
    def sign(self) -> float:
        """+1 for the future cone, -1 for the past cone."""
        return 1.0 if self.orientation is Orientation.FUTURE else -1.0


def cone_indicator(time: np.ndarray, spatial_norm: np.ndarray, cfg: ConeConfig) -> np.ndarray:
    """Vectorized chi_R: c * xi_0 >= |xi| (future) or c * xi_0 <= -|xi| (past)."""
    return (cfg.sign * cfg.c * np.asarray(time) >= np.asarray(spatial_norm)).astype(float)


def chi_cone(xi: FourMomentum, cfg: ConeConfig) -> int:
    s, rho = xi.radial
    return int(cone_indicator(s, rho, cfg))


def minkowski_form(xi: np.ndarray) -> np.ndarray:
    """q = xi_0^2 - xi_1^2 - xi_2^2 - xi_3^2 over the last axis."""
    xi = np.asarray(xi, dtype=float)
    return xi[..., 0] ** 2 - np.sum(xi[..., 1:] ** 2, axis=-1)


def minkowski_q(xi: FourMomentum | Sequence[float]) -> float:
    values = xi.xi if isinstance(xi, FourMomentum) else tuple(xi)
    return float(minkowski_form(np.array(values)))


def boost(xi: FourMomentum, rapidity: float) -> FourMomentum:
    """Hyperbolic rotation of the (xi_0, xi_1) plane."""
    ch, sh = math.cosh(rapidity), math.sinh(rapidity)
    x0, x1, x2, x3 = xi.xi
    return FourMomentum((ch * x0 + sh * x1, sh * x0 + ch * x1, x2, x3))
