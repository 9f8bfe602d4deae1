"""Brute-force evaluations of lambda(xi) used to validate the radial reduction.

Neither method uses the angular integration or the radial quadrature:
Monte Carlo samples the full 4D Gaussian, the tensor grid runs Gauss-Hermite
over the three spatial offsets and integrates the time axis (where chi_R is
discontinuous) in closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from ..errors import ConfigurationError
from .geometry import ConeConfig, FourMomentum, cone_indicator, minkowski_form

__all__ = ("MonteCarlo", "OracleResult", "TensorGrid", "lambda_oracle", "mu_oracle")

MIN_SAMPLES = 100_000
MIN_NODES = 24


@dataclass(frozen=True)
class MonteCarlo:
    samples: int = 1_000_000
    seed: int = 0


@dataclass(frozen=True)
class TensorGrid:
    nodes: int = 32


@dataclass(frozen=True)
class OracleResult:
    value: float
    error_estimate: float


def _check(method: MonteCarlo | TensorGrid) -> None:
    if isinstance(method, MonteCarlo) and method.samples < MIN_SAMPLES:
        raise ConfigurationError(f"Monte Carlo oracle needs >= {MIN_SAMPLES} samples")
    if isinstance(method, TensorGrid) and method.nodes < MIN_NODES:
        raise ConfigurationError(f"tensor-grid oracle needs >= {MIN_NODES} nodes per axis")


def _monte_carlo(xi: FourMomentum, cfg: ConeConfig, method: MonteCarlo, weighted: bool):
    rng = np.random.default_rng(method.seed)
    # density pi^-2 exp(-|x|^2) is N(0, 1/2) per axis
    y = xi.as_array() + rng.normal(scale=math.sqrt(0.5), size=(method.samples, 4))
    values = cone_indicator(y[:, 0], np.linalg.norm(y[:, 1:], axis=1), cfg)
    if weighted:
        values = values * minkowski_form(y)
    return float(np.mean(values)), float(np.std(values, ddof=1) / math.sqrt(method.samples))


def _tensor_grid(xi: FourMomentum, cfg: ConeConfig, nodes: int, weighted: bool) -> float:
    t, w = np.polynomial.hermite.hermgauss(nodes)
    grid = np.meshgrid(t, t, t, indexing="ij")
    weights = np.einsum("i,j,k->ijk", w, w, w).ravel()
    spatial = np.stack([g.ravel() for g in grid], axis=1) + np.asarray(xi.xi[1:])
    radius = np.linalg.norm(spatial, axis=1)
    # chi_R(xi + x) = 1 on x_0 >= b (orientation folded into the sign of xi_0)
    x0 = cfg.sign * xi.xi[0]
    b = radius / cfg.c - x0
    m0 = 0.5 * math.sqrt(math.pi) * special.erfc(b)
    if not weighted:
        return float(np.sum(weights * m0) / math.pi**2)
    gauss = np.exp(-(b**2))
    m1 = 0.5 * gauss
    m2 = 0.5 * b * gauss + 0.5 * m0
    # int_b^inf ((x0 + t)^2 - |y|^2) exp(-t^2) dt
    time_part = m2 + 2.0 * x0 * m1 + (x0**2 - radius**2) * m0
    return float(np.sum(weights * time_part) / math.pi**2)


def _oracle(
    xi: FourMomentum, cfg: ConeConfig, method: MonteCarlo | TensorGrid, weighted: bool
) -> OracleResult:
    _check(method)
    scale = 1.0 / (4.0 * cfg.m * cfg.c) if weighted else 1.0
    if isinstance(method, MonteCarlo):
        mean, stderr = _monte_carlo(xi, cfg, method, weighted)
        return OracleResult(value=scale * mean, error_estimate=scale * stderr)
    fine = _tensor_grid(xi, cfg, method.nodes, weighted)
    coarse = _tensor_grid(xi, cfg, (3 * method.nodes) // 4, weighted)
    return OracleResult(value=scale * fine, error_estimate=scale * abs(fine - coarse))


def lambda_oracle(
    xi: FourMomentum, cfg: ConeConfig, method: MonteCarlo | TensorGrid
) -> OracleResult:
    """Direct evaluation of 1/(4 m c pi^2) int chi_V(xi + x) q(xi + x) exp(-|x|^2) d^4x."""
    return _oracle(xi, cfg, method, weighted=True)


def mu_oracle(xi: FourMomentum, cfg: ConeConfig, method: MonteCarlo | TensorGrid) -> OracleResult:
    return _oracle(xi, cfg, method, weighted=False)
