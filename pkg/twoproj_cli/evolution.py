"""Free relativistic wave packets under H_S = lambda(xi) I.

Packets live in the momentum representation on a uniform periodic grid. The
exact propagator is the phase exp(-i lambda(xi) tau / hbar); the coordinate
representation is reached by a unitary FFT with kernel exp(+i xi x).
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field, replace
from functools import cached_property, lru_cache

import numpy as np
from scipy import special

from .cone import (
    ConeConfig,
    FourMomentum,
    QuadParams,
    RadialTable,
    cone_indicator,
    interpolate_lambda,
    lambda_gradient,
    lambda_reduced,
    minkowski_form,
)
from .errors import ConfigurationError, DomainError, WrapAroundError

__all__ = (
    "ApproximateSymbol",
    "DirectSymbol",
    "EvolutionConfig",
    "ExactSymbol",
    "GridSpec",
    "GroupVelocityResult",
    "Snapshot",
    "WavePacket",
    "centroid_momentum",
    "centroid_position",
    "compare_exact_vs_approx",
    "evolve",
    "grid_nodes",
    "group_velocity_check",
    "make_gaussian_packet",
    "momentum_observable_expectation",
    "position_grid",
    "run_snapshots",
    "symbol_values",
    "to_momentum",
    "to_position",
)

logger = logging.getLogger(__name__)

MAX_NODES_4D = 64**4
# Largest probability mass a packet may lose to the grid edges.
TRUNCATION_TOL = 1e-6
# Fraction of each position axis, at both ends, treated as the wrap-around zone.
EDGE_FRACTION = 0.125
# A 4D symbol array alone can reach 64**4 * 8 bytes.
SYMBOL_CACHE_SIZE = 4


@dataclass(frozen=True)
class GridSpec:
    """Uniform periodic momentum grid; dims 2 is the reduced (xi_0, xi_1) plane."""

    dims: int
    points_per_axis: tuple[int, ...]
    extents: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        if self.dims not in (2, 4):
            raise ConfigurationError(f"grid dims must be 2 or 4, got {self.dims}")
        points = tuple(int(n) for n in self.points_per_axis)
        extents = tuple((float(lo), float(hi)) for lo, hi in self.extents)
        if len(points) != self.dims or len(extents) != self.dims:
            raise ConfigurationError("points_per_axis and extents need one entry per axis")
        for n in points:
            if n < 2 or n & (n - 1):
                raise ConfigurationError(f"points per axis must be powers of two, got {n}")
        for lo, hi in extents:
            if not (hi > 0 and lo == -hi):
                raise ConfigurationError(f"extents must be symmetric about 0, got [{lo}, {hi}]")
        if self.dims == 4 and math.prod(points) > MAX_NODES_4D:
            raise ConfigurationError("4D grids are capped at 64^4 nodes")
        object.__setattr__(self, "points_per_axis", points)
        object.__setattr__(self, "extents", extents)

    @classmethod
    def square(cls, dims: int, points: int, half_width: float) -> GridSpec:
        return cls(dims, (points,) * dims, ((-half_width, half_width),) * dims)

    @property
    def shape(self) -> tuple[int, ...]:
        return self.points_per_axis

    @property
    def spacing(self) -> tuple[float, ...]:
        return tuple((hi - lo) / n for (lo, hi), n in zip(self.extents, self.points_per_axis))

    @property
    def cell_volume(self) -> float:
        return math.prod(self.spacing)

    @property
    def axes(self) -> list[np.ndarray]:
        return [
            lo + h * np.arange(n)
            for (lo, _), h, n in zip(self.extents, self.spacing, self.points_per_axis)
        ]


@dataclass(frozen=True, eq=False)
class WavePacket:
    grid: GridSpec
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        amplitudes = np.asarray(self.amplitudes, dtype=complex)
        if amplitudes.shape != self.grid.shape:
            raise ConfigurationError(
                f"amplitudes have shape {amplitudes.shape}, grid is {self.grid.shape}"
            )
        if not np.all(np.isfinite(amplitudes)):
            raise ConfigurationError("amplitudes must be finite")
        object.__setattr__(self, "amplitudes", amplitudes)
        if self.norm <= 0.0:
            raise ConfigurationError("a wave packet needs a positive norm")

    @cached_property
    def norm(self) -> float:
        return math.sqrt(float(np.sum(np.abs(self.amplitudes) ** 2)) * self.grid.cell_volume)


@dataclass(frozen=True)
class ExactSymbol:
    table: RadialTable


@dataclass(frozen=True)
class DirectSymbol:
    """Per-node lambda_reduced; slow, for validating the table path."""

    qp: QuadParams = field(default_factory=QuadParams)


@dataclass(frozen=True)
class ApproximateSymbol:
    """chi_R(xi) q(xi) / (4 m c); include_cone=False drops chi_R."""

    include_cone: bool = True


Symbol = ExactSymbol | DirectSymbol | ApproximateSymbol


@dataclass(frozen=True)
class EvolutionConfig:
    symbol: Symbol
    tau: float
    cfg: ConeConfig = field(default_factory=ConeConfig)

    def __post_init__(self) -> None:
        if not math.isfinite(self.tau):
            raise ConfigurationError(f"tau must be finite, got {self.tau}")


def grid_nodes(grid: GridSpec) -> np.ndarray:
    """Node coordinates as four-vectors, shape (*grid.shape, 4)."""
    mesh = np.meshgrid(*grid.axes, indexing="ij")
    nodes = np.zeros((*grid.shape, 4))
    for k, axis in enumerate(mesh):
        nodes[..., k] = axis
    return nodes


def _radial_nodes(grid: GridSpec) -> tuple[np.ndarray, np.ndarray]:
    nodes = grid_nodes(grid)
    return nodes[..., 0], np.linalg.norm(nodes[..., 1:], axis=-1)


@lru_cache(maxsize=SYMBOL_CACHE_SIZE)
def _cached_symbol(grid: GridSpec, symbol: Symbol, cfg: ConeConfig) -> np.ndarray:
    s, rho = _radial_nodes(grid)
    match symbol:
        case ExactSymbol(table=table):
            if table.config != cfg:
                raise ConfigurationError("the radial table was built for a different ConeConfig")
            outside = ~table.contains(s, rho)
            if np.any(outside):
                raise DomainError(
                    f"{int(outside.sum())} grid nodes fall outside the table hull {table.hull}"
                )
            values = np.asarray(interpolate_lambda(table, s, rho))
        case DirectSymbol(qp=qp):
            pairs, inverse = np.unique(
                np.stack([s.ravel(), rho.ravel()], axis=1), axis=0, return_inverse=True
            )
            logger.debug("direct symbol: %d lambda evaluations", len(pairs))
            unique = np.array([lambda_reduced(a, b, cfg, qp) for a, b in pairs])
            values = unique[np.ravel(inverse)].reshape(s.shape)
        case ApproximateSymbol(include_cone=include_cone):
            values = minkowski_form(grid_nodes(grid)) / (4.0 * cfg.m * cfg.c)
            if include_cone:
                values = values * cone_indicator(s, rho, cfg)
        case _:
            raise ConfigurationError(f"unknown symbol {symbol!r}")
    values = np.array(values, dtype=float)
    values.setflags(write=False)
    return values


def symbol_values(grid: GridSpec, symbol: Symbol, cfg: ConeConfig) -> np.ndarray:
    """lambda (or its approximation) on every grid node."""
    return _cached_symbol(grid, symbol, cfg)


def make_gaussian_packet(
    grid: GridSpec, center: FourMomentum, widths: Sequence[float]
) -> WavePacket:
    """Normalized Gaussian packet; widths are the standard deviations of |phi|^2."""
    widths = [float(w) for w in widths]
    if len(widths) != grid.dims:
        raise ConfigurationError(f"need {grid.dims} widths, got {len(widths)}")
    if grid.dims == 2 and any(center.xi[2:]):
        raise ConfigurationError("a reduced 2D grid needs a center with xi_2 = xi_3 = 0")
    coords = center.xi[: grid.dims]
    captured = 1.0
    for c, w, h, (lo, hi) in zip(coords, widths, grid.spacing, grid.extents):
        if not lo <= c < hi:
            raise ConfigurationError(f"center {coords} lies outside the grid extents")
        if w < 4.0 * h:
            raise ConfigurationError(f"width {w} is below four grid cells ({4.0 * h})")
        captured *= special.ndtr((hi - c) / w) - special.ndtr((lo - c) / w)
    if 1.0 - captured > TRUNCATION_TOL:
        raise ConfigurationError(
            f"packet loses {1.0 - captured:.2e} of its mass to the grid edges"
        )
    mesh = np.meshgrid(*grid.axes, indexing="ij")
    exponent = sum((x - c) ** 2 / (4.0 * w**2) for x, c, w in zip(mesh, coords, widths))
    amplitudes = np.exp(-exponent).astype(complex)
    norm = math.sqrt(float(np.sum(np.abs(amplitudes) ** 2)) * grid.cell_volume)
    return WavePacket(grid=grid, amplitudes=amplitudes / norm)


def centroid_momentum(packet: WavePacket) -> np.ndarray:
    density = np.abs(packet.amplitudes) ** 2
    total = np.sum(density)
    mesh = np.meshgrid(*packet.grid.axes, indexing="ij")
    return np.array([np.sum(axis * density) / total for axis in mesh])


def evolve(packet: WavePacket, ec: EvolutionConfig) -> WavePacket:
    """phi(tau, xi) = exp(-i lambda(xi) tau / hbar) phi(0, xi)."""
    if ec.tau == 0.0:
        return packet
    values = symbol_values(packet.grid, ec.symbol, ec.cfg)
    phase = np.exp(-1j * values * (ec.tau / ec.cfg.hbar))
    return WavePacket(grid=packet.grid, amplitudes=packet.amplitudes * phase)


def _position_scale(grid: GridSpec) -> float:
    # sum |f|^2 dx = sum |phi|^2 dxi for the orthonormal DFT
    dx = [2.0 * math.pi / (n * h) for n, h in zip(grid.points_per_axis, grid.spacing)]
    return math.sqrt(grid.cell_volume / math.prod(dx))


def position_grid(grid: GridSpec) -> list[np.ndarray]:
    """Coordinates of the dual grid returned by to_position."""
    return [
        (np.arange(n) - n // 2) * (2.0 * math.pi / (n * h))
        for n, h in zip(grid.points_per_axis, grid.spacing)
    ]


def to_position(packet: WavePacket) -> np.ndarray:
    """f = F^-1 phi on the dual grid."""
    shifted = np.fft.ifftshift(packet.amplitudes)
    return np.fft.fftshift(np.fft.ifftn(shifted, norm="ortho")) * _position_scale(packet.grid)


def to_momentum(position_array: np.ndarray, grid: GridSpec) -> WavePacket:
    shifted = np.fft.ifftshift(np.asarray(position_array, dtype=complex))
    amplitudes = np.fft.fftshift(np.fft.fftn(shifted, norm="ortho")) / _position_scale(grid)
    return WavePacket(grid=grid, amplitudes=amplitudes)


def momentum_observable_expectation(
    packet: WavePacket, f: Callable[[np.ndarray], np.ndarray]
) -> float:
    """<phi | f(xi) | phi> / <phi | phi> for a real function of the four-momentum."""
    values = np.asarray(f(grid_nodes(packet.grid)), dtype=float)
    density = np.abs(packet.amplitudes) ** 2 * packet.grid.cell_volume
    return float(np.sum(values * density) / packet.norm**2)


def centroid_position(position_array: np.ndarray, grid: GridSpec) -> np.ndarray:
    density = np.abs(position_array) ** 2
    total = np.sum(density)
    mesh = np.meshgrid(*position_grid(grid), indexing="ij")
    return np.array([np.sum(axis * density) / total for axis in mesh])


def _check_wrap(position_array: np.ndarray, grid: GridSpec) -> None:
    density = np.abs(position_array) ** 2
    total = float(np.sum(density))
    interior = np.ones(grid.shape, dtype=bool)
    for k, n in enumerate(grid.points_per_axis):
        edge = max(1, int(n * EDGE_FRACTION))
        index = [slice(None)] * grid.dims
        index[k] = np.r_[0:edge, n - edge : n]
        interior[tuple(index)] = False
    leaked = float(np.sum(density[~interior])) / total
    if leaked > TRUNCATION_TOL:
        raise WrapAroundError(
            "packet reaches the periodic edge of the position grid",
            diagnostics={"edge_mass": f"{leaked:.2e}"},
        )


@dataclass(frozen=True)
class GroupVelocityResult:
    measured: np.ndarray
    predicted: np.ndarray
    rel_err: float


def group_velocity_check(
    packet: WavePacket,
    ec: EvolutionConfig,
    tau: float,
    qp: QuadParams | None = None,
) -> GroupVelocityResult:
    """Compare the centroid velocity with grad lambda / hbar at the packet center."""
    start = to_position(packet)
    end = to_position(evolve(packet, replace(ec, tau=tau)))
    _check_wrap(start, packet.grid)
    _check_wrap(end, packet.grid)
    measured = (centroid_position(end, packet.grid) - centroid_position(start, packet.grid)) / tau
    center = FourMomentum.of(*centroid_momentum(packet))
    gradient = lambda_gradient(center, ec.cfg, qp or QuadParams(rel_tol=1e-12, abs_tol=1e-14))
    predicted = gradient[: packet.grid.dims] / ec.cfg.hbar
    rel_err = float(np.linalg.norm(measured - predicted) / np.linalg.norm(predicted))
    return GroupVelocityResult(measured=measured, predicted=predicted, rel_err=rel_err)


def compare_exact_vs_approx(
    packet: WavePacket,
    tau: float,
    table: RadialTable,
    cfg: ConeConfig,
    include_cone: bool = True,
) -> float:
    """Relative L2 distance between exact and first-approximation evolution."""
    exact = evolve(packet, EvolutionConfig(ExactSymbol(table), tau, cfg))
    approx = evolve(packet, EvolutionConfig(ApproximateSymbol(include_cone), tau, cfg))
    delta = exact.amplitudes - approx.amplitudes
    distance = math.sqrt(float(np.sum(np.abs(delta) ** 2)) * packet.grid.cell_volume)
    return distance / packet.norm


@dataclass(frozen=True)
class Snapshot:
    tau: float
    packet: WavePacket
    norm: float
    expectations: dict[str, float]
    centroid: np.ndarray


def run_snapshots(
    packet: WavePacket,
    symbol: Symbol,
    cfg: ConeConfig,
    taus: Sequence[float],
) -> list[Snapshot]:
    """Evolve the initial packet to every tau, tracking norms, energies and centroids."""
    lam = symbol_values(packet.grid, symbol, cfg)
    observables: dict[str, Callable[[np.ndarray], np.ndarray]] = {
        "minkowski_q": minkowski_form,
        "lambda": lambda _nodes: lam,
    }
    snapshots = []
    for tau in taus:
        state = evolve(packet, EvolutionConfig(symbol, float(tau), cfg))
        snapshots.append(
            Snapshot(
                tau=float(tau),
                packet=state,
                norm=state.norm,
                expectations={
                    name: momentum_observable_expectation(state, f)
                    for name, f in observables.items()
                },
                centroid=centroid_position(to_position(state), packet.grid),
            )
        )
    return snapshots
