"""Spectrum of (P_Q - P_R)^2 compressed to the Fock space.

On Im P_Q the operator equals P_Q - P_Q P_R P_Q, which the Bargmann isometry
carries to multiplication by 1 - mu(xi). Its spectrum is the closure of the
range of 1 - mu, probed here by sampling a radial table and by finite
sections on Hermite functions along the slice rho = rho0.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy import linalg

from .algebra import SpinClass, classify_spin
from .bargmann import QuadratureSpec, hermite_functions
from .cone import ConeConfig, QuadParams, RadialTable, build_radial_table
from .cone import interpolate_mu_complement, mu_complement_reduced
from .errors import ConfigurationError, DomainError

__all__ = (
    "EIGENVALUE_TOL",
    "FiniteSection",
    "SpectrumReport",
    "default_table",
    "energy_range",
    "finite_section",
    "spectrum_range",
    "spin_from_spectral_value",
)

logger = logging.getLogger(__name__)

EIGENVALUE_TOL = 1e-8
# The sampled s-range must reach the Gaussian tails on both sides.
REQUIRED_S_SPAN = 10.0


@dataclass(frozen=True)
class SpectrumReport:
    observed_min: float
    observed_max: float
    coverage_histogram: np.ndarray = field(repr=False)
    bin_edges: np.ndarray = field(repr=False)
    max_gap: float
    samples: int

    @property
    def empty_bins(self) -> int:
        return int(np.sum(self.coverage_histogram == 0))


@dataclass(frozen=True, eq=False)
class FiniteSection:
    size: int
    rho0: float
    matrix: np.ndarray = field(repr=False)

    @cached_property
    def eigenvalues(self) -> np.ndarray:
        return linalg.eigh(self.matrix, eigvals_only=True)


def default_table(cfg: ConeConfig | None = None, qp: QuadParams | None = None) -> RadialTable:
    """The 200 x 50 table over s in [-10, 10], rho in [0, 10]."""
    return build_radial_table(np.linspace(-10.0, 10.0, 200), np.linspace(0.0, 10.0, 50), cfg, qp)


def spectrum_range(table: RadialTable, bins: int = 64) -> SpectrumReport:
    """Min, max, coverage and largest gap of the sampled values of 1 - mu."""
    (s_lo, s_hi), _ = table.hull
    if s_lo > -REQUIRED_S_SPAN or s_hi < REQUIRED_S_SPAN:
        raise ConfigurationError(
            f"table spans s in [{s_lo}, {s_hi}], needs at least "
            f"[-{REQUIRED_S_SPAN}, {REQUIRED_S_SPAN}]"
        )
    values = np.sort(table.mu_complement_values.ravel())
    counts, edges = np.histogram(values, bins=bins, range=(0.0, 1.0))
    gaps = np.diff(np.concatenate(([0.0], values, [1.0])))
    return SpectrumReport(
        observed_min=float(values[0]),
        observed_max=float(values[-1]),
        coverage_histogram=counts,
        bin_edges=edges,
        max_gap=float(np.max(gaps)),
        samples=values.size,
    )


def _complement_profile(
    s: np.ndarray, rho0: float, table: RadialTable, qp: QuadParams | None
) -> np.ndarray:
    inside = table.contains(s, np.full_like(s, rho0))
    profile = np.empty_like(s)
    if np.any(inside):
        profile[inside] = interpolate_mu_complement(table, s[inside], np.full(inside.sum(), rho0))
    # nodes past the table carry Gauss-Hermite weights far below rounding
    for i in np.flatnonzero(~inside):
        profile[i] = mu_complement_reduced(float(s[i]), rho0, table.config, qp)
    return profile


def finite_section(
    size: int,
    rho0: float,
    table: RadialTable,
    quad: QuadratureSpec | None = None,
    qp: QuadParams | None = None,
) -> FiniteSection:
    """Galerkin compression of multiplication by 1 - mu(., rho0) onto h_0..h_(N-1)."""
    if size < 2:
        raise ConfigurationError(f"finite section size must be >= 2, got {size}")
    quad = quad or QuadratureSpec(2 * size + 32)
    if quad.nodes_per_axis < size + 1:
        raise ConfigurationError(
            f"{quad.nodes_per_axis} Gauss-Hermite nodes cannot resolve a section of size {size}"
        )
    t, w = np.polynomial.hermite.hermgauss(quad.nodes_per_axis)
    with np.errstate(divide="ignore"):
        scaled = np.exp(np.log(w) + t**2)
    profile = _complement_profile(t, rho0, table, qp)
    h = hermite_functions(t, size)
    matrix = (h * (scaled * profile)) @ h.T
    section = FiniteSection(size=size, rho0=rho0, matrix=0.5 * (matrix + matrix.T))
    eig = section.eigenvalues
    if eig[0] < -EIGENVALUE_TOL or eig[-1] > 1.0 + EIGENVALUE_TOL:
        raise ConfigurationError(
            f"finite section of size {size} has eigenvalues in [{eig[0]:.3e}, {eig[-1]:.3e}]; "
            "quadrature is under-resolved"
        )
    logger.debug("finite section N=%d: eigenvalues in [%.3e, %.3e]", size, eig[0], eig[-1])
    return section


def spin_from_spectral_value(v: float) -> SpinClass:
    if not 0.0 <= v <= 1.0:
        raise DomainError(f"spectral value must lie in [0, 1], got {v}")
    return classify_spin(v)


def energy_range(table: RadialTable) -> tuple[float, float]:
    """Smallest and largest sampled lambda; the spectrum of H_S is (0, +inf)."""
    values = table.lambda_values
    return float(np.min(values)), float(np.max(values))
