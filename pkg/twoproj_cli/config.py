"""Run configuration loaded from JSON.

Every section is a frozen dataclass with explicit defaults; unknown keys are
rejected at every level so a typo never silently falls back to a default.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
from collections.abc import Callable
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from .cone import ConeConfig, FourMomentum, QuadParams, RadialTable, build_radial_table
from .errors import ConfigurationError
from .evolution import (
    ApproximateSymbol,
    DirectSymbol,
    ExactSymbol,
    GridSpec,
    Symbol,
    WavePacket,
    make_gaussian_packet,
)

__all__ = (
    "GridSettings",
    "PacketSettings",
    "QuadratureSettings",
    "RunConfig",
    "TableSettings",
    "UnitSettings",
    "config_hash",
)

SYMBOL_KINDS = ("exact", "direct", "approximate")


@dataclass(frozen=True)
class UnitSettings:
    m: float = 1.0
    c: float = 1.0
    hbar: float = 1.0
    orientation: str = "future"


@dataclass(frozen=True)
class QuadratureSettings:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-13
    r_cutoff: float | None = None
    max_subdivisions: int = 200


@dataclass(frozen=True)
class TableSettings:
    """Radial table used by the exact symbol; must cover every grid node."""

    s_min: float = -8.0
    s_max: float = 8.0
    s_points: int = 129
    rho_max: float = 8.0
    rho_points: int = 65


@dataclass(frozen=True)
class GridSettings:
    dims: int = 2
    points: int = 128
    half_width: float = 8.0


@dataclass(frozen=True)
class PacketSettings:
    center: tuple[float, ...] = (3.0, 1.0, 0.0, 0.0)
    widths: tuple[float, ...] = (0.5, 0.5)


@dataclass(frozen=True)
class EvolveSettings:
    symbol: str = "exact"
    include_cone: bool = True
    taus: tuple[float, ...] = (0.0, 0.25, 0.5)

    def __post_init__(self) -> None:
        if self.symbol not in SYMBOL_KINDS:
            raise ConfigurationError(
                f"evolve.symbol must be one of {', '.join(SYMBOL_KINDS)}, got {self.symbol!r}"
            )


_SECTIONS: dict[str, type] = {
    "units": UnitSettings,
    "quadrature": QuadratureSettings,
    "table": TableSettings,
    "grid": GridSettings,
    "packet": PacketSettings,
    "evolve": EvolveSettings,
}


def _is_number(value: Any) -> bool:
    return isinstance(value, int | float) and not isinstance(value, bool)


_FIELD_CHECKS: dict[str, tuple[Callable[[Any], bool], str]] = {
    "float": (_is_number, "a number"),
    "float | None": (lambda v: v is None or _is_number(v), "a number or null"),
    "int": (lambda v: isinstance(v, int) and not isinstance(v, bool), "an integer"),
    "bool": (lambda v: isinstance(v, bool), "a boolean"),
    "str": (lambda v: isinstance(v, str), "a string"),
    "tuple[float, ...]": (
        lambda v: isinstance(v, tuple) and all(_is_number(x) for x in v),
        "a list of numbers",
    ),
}


def _check_field(field_: dataclasses.Field, value: Any, where: str) -> None:
    check, expected = _FIELD_CHECKS[str(field_.type)]
    if not check(value):
        raise ConfigurationError(f"{where}.{field_.name} must be {expected}, got {value!r}")


def _build(cls: type, data: Any, where: str) -> Any:
    if not isinstance(data, dict):
        raise ConfigurationError(f"{where} must be an object, got {type(data).__name__}")
    known = {f.name for f in dataclasses.fields(cls)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigurationError(f"unknown keys in {where}: {', '.join(unknown)}")
    values = {k: tuple(v) if isinstance(v, list) else v for k, v in data.items()}
    for f in dataclasses.fields(cls):
        if f.name in values:
            _check_field(f, values[f.name], where)
    try:
        return cls(**values)
    except TypeError as exc:
        raise ConfigurationError(f"invalid {where}: {exc}") from exc


@dataclass(frozen=True)
class RunConfig:
    units: UnitSettings = field(default_factory=UnitSettings)
    quadrature: QuadratureSettings = field(default_factory=QuadratureSettings)
    table: TableSettings = field(default_factory=TableSettings)
    grid: GridSettings = field(default_factory=GridSettings)
    packet: PacketSettings = field(default_factory=PacketSettings)
    evolve: EvolveSettings = field(default_factory=EvolveSettings)
    output_dir: str = "."
    seed: int = 0

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> RunConfig:
        if not isinstance(data, dict):
            raise ConfigurationError("run config must be a JSON object")
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigurationError(f"unknown keys in run config: {', '.join(unknown)}")
        kwargs: dict[str, Any] = {
            name: _build(section, data[name], name)
            for name, section in _SECTIONS.items()
            if name in data
        }
        if "output_dir" in data:
            kwargs["output_dir"] = str(data["output_dir"])
        if "seed" in data:
            if not isinstance(data["seed"], int) or isinstance(data["seed"], bool):
                raise ConfigurationError(f"seed must be an integer, got {data['seed']!r}")
            kwargs["seed"] = data["seed"]
        return cls(**kwargs)

    @classmethod
    def from_file(cls, path: str | Path) -> RunConfig:
        try:
            data = json.loads(Path(path).read_text())
        except FileNotFoundError:
            raise ConfigurationError(f"config file not found: {path}") from None
        except json.JSONDecodeError as exc:
            raise ConfigurationError(f"config file {path} is not valid JSON: {exc}") from exc
        return cls.from_dict(data)

    def to_dict(self) -> dict[str, Any]:
        def plain(value: Any) -> Any:
            if isinstance(value, tuple):
                return [plain(v) for v in value]
            if isinstance(value, dict):
                return {k: plain(v) for k, v in value.items()}
            return value

        return plain(dataclasses.asdict(self))

    def cone_config(self) -> ConeConfig:
        u = self.units
        return ConeConfig(m=u.m, c=u.c, hbar=u.hbar, orientation=u.orientation)

    def quad_params(self) -> QuadParams:
        q = self.quadrature
        return QuadParams(
            rel_tol=q.rel_tol,
            abs_tol=q.abs_tol,
            r_cutoff=q.r_cutoff,
            max_subdivisions=q.max_subdivisions,
        )

    def grid_spec(self) -> GridSpec:
        g = self.grid
        return GridSpec.square(g.dims, g.points, g.half_width)

    def radial_table(self) -> RadialTable:
        t = self.table
        return build_radial_table(
            np.linspace(t.s_min, t.s_max, t.s_points),
            np.linspace(0.0, t.rho_max, t.rho_points),
            self.cone_config(),
            self.quad_params(),
        )

    def initial_packet(self) -> WavePacket:
        center = FourMomentum.of(*self.packet.center)
        return make_gaussian_packet(self.grid_spec(), center, self.packet.widths)

    def symbol(self) -> Symbol:
        match self.evolve.symbol:
            case "exact":
                return ExactSymbol(self.radial_table())
            case "direct":
                return DirectSymbol(self.quad_params())
            case _:
                return ApproximateSymbol(self.evolve.include_cone)


def config_hash(config: RunConfig) -> str:
    """SHA-256 of the canonical JSON of the config."""
    canonical = json.dumps(config.to_dict(), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode()).hexdigest()
