"""Gaussian smearing of the causal cone: the symbols lambda(xi) and mu(xi).

    lambda(xi) = 1 / (4 m c pi^2) * int_V q(y) exp(-|y - xi|^2) d^4y
    mu(xi)     = pi^-2 * int_V exp(-|y - xi|^2) d^4y

Both depend on xi only through (s, rho) = (xi_0, |xi_vec|). With xi = (s, rho, 0, 0)
the two angular integrals give 4 pi sinh(2 r rho) / (2 r rho) and the y_0
integral over the half line y_0 >= r / c is a combination of Gaussian moments,
which leaves one integral over the spatial radius r.

Every radial integrand is written as weight(r) * exp(E(r)) with a concave
exponent E, so values far outside the cone are computed relative to their
own peak and never underflow.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Literal

import numpy as np
from scipy import integrate, special

from ..errors import ConfigurationError, DomainError, NumericalError
from .geometry import ConeConfig, FourMomentum, boost, chi_cone, minkowski_q

__all__ = (
    "AsymptoticRow",
    "QuadParams",
    "asymptotic_convergence",
    "evaluate_log_radial",
    "lambda_",
    "lambda_asymptotic",
    "lambda_gradient",
    "lambda_reduced",
    "lorentz_deviation",
    "mu",
    "mu_complement_reduced",
    "mu_reduced",
)

logger = logging.getLogger(__name__)

Kind = Literal["lambda", "mu", "mu_complement"]

_SQRT_PI = math.sqrt(math.pi)
# 2 r rho below this uses the series of (1 - exp(-2u)) / (2u).
_SERIES_THRESHOLD = 1e-4
# Extra radius beyond |xi| where the Gaussian tail is negligible in double precision.
_TAIL_MARGIN = 10.0
_MIN_TAIL_MARGIN = 8.0


@dataclass(frozen=True)
class QuadParams:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-13
    r_cutoff: float | None = None
    max_subdivisions: int = 200

    def __post_init__(self) -> None:
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ConfigurationError("quadrature tolerances must be > 0")
        if self.max_subdivisions < 1:
            raise ConfigurationError("max_subdivisions must be >= 1")

    def cutoff_for(self, s: float, rho: float) -> float:
        norm = math.hypot(s, rho)
        if self.r_cutoff is None:
            return norm + _TAIL_MARGIN
        if self.r_cutoff < norm + _MIN_TAIL_MARGIN:
            raise ConfigurationError(
                f"r_cutoff={self.r_cutoff} is below |xi| + {_MIN_TAIL_MARGIN} = "
                f"{norm + _MIN_TAIL_MARGIN:.3f}"
            )
        return self.r_cutoff


def _angular_factor(r: np.ndarray, rho: np.ndarray) -> np.ndarray:
    """exp(-r^2 - rho^2) sinh(2 r rho) / (2 r rho) without the exp(-(r - rho)^2) part."""
    u = 2.0 * np.asarray(r) * np.asarray(rho)
    small = u < _SERIES_THRESHOLD
    safe = np.where(small, 1.0, u)
    return np.where(small, 1.0 - u + (2.0 / 3.0) * u**2, -np.expm1(-2.0 * safe) / (2.0 * safe))


def _half_line_moments(d: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """g_k(d) with int_0^inf u^k exp(-(u - d)^2) du = exp(-min(d, 0)^2) g_k(d)."""
    d = np.asarray(d, dtype=float)
    neg = d < 0.0
    ad = np.abs(d)
    g0 = np.where(neg, 0.5 * _SQRT_PI * special.erfcx(ad), 0.5 * _SQRT_PI * special.erfc(-ad))
    gauss = np.where(neg, 1.0, np.exp(-(d**2)))
    g1 = 0.5 * gauss + d * g0
    g2 = 0.5 * d * gauss + (0.5 + d**2) * g0
    return g0, g1, g2


def _radial_terms(
    r: np.ndarray, s: np.ndarray, rho: np.ndarray, c: float, kind: Kind
) -> tuple[np.ndarray, np.ndarray]:
    """(exponent, weight) of the radial integrand; s is already oriented."""
    r = np.asarray(r, dtype=float)
    a = r / c
    d = s - a
    base = -((r - rho) ** 2)
    weight = r**2 * _angular_factor(r, rho)
    if kind == "mu_complement":
        # int_{-inf}^{a} exp(-(y0 - s)^2) dy0 = sqrt(pi)/2 erfc(d)
        pos = d > 0.0
        ad = np.abs(d)
        comp = np.where(pos, 0.5 * _SQRT_PI * special.erfcx(ad), 0.5 * _SQRT_PI * special.erfc(-ad))
        return base - np.maximum(d, 0.0) ** 2, weight * comp
    g0, g1, g2 = _half_line_moments(d)
    exponent = base - np.minimum(d, 0.0) ** 2
    if kind == "mu":
        return exponent, weight * g0
    # (y0^2 - r^2) with y0 = a + u
    return exponent, weight * (g2 + 2.0 * a * g1 + (a**2 - r**2) * g0)


def _prefactor(kind: Kind, cfg: ConeConfig) -> float:
    if kind == "lambda":
        return 4.0 * math.pi / (4.0 * cfg.m * cfg.c * math.pi**2)
    return 4.0 * math.pi / math.pi**2


def _peak(s: float, rho: float, c: float, kind: Kind) -> tuple[float, list[float]]:
    """Max of the concave exponent over r >= 0 and the breakpoints of the integrand."""
    inv = 1.0 / c
    # stationary point of -(r - rho)^2 - (r / c - s)^2
    coupled = (rho + s * inv) / (1.0 + inv**2)
    candidates = [0.0, max(rho, 0.0), max(coupled, 0.0)]
    exponents, _ = _radial_terms(np.array(candidates), s, rho, c, kind)
    return float(np.max(exponents)), [rho, c * s, coupled]


def _radial_integral(s: float, rho: float, cfg: ConeConfig, qp: QuadParams, kind: Kind) -> float:
    if rho < 0:
        raise DomainError(f"rho must be >= 0, got {rho}")
    oriented = cfg.sign * s
    cutoff = qp.cutoff_for(s, rho)
    e_star, breaks = _peak(oriented, rho, cfg.c, kind)

    def integrand(r: float) -> float:
        exponent, weight = _radial_terms(r, oriented, rho, cfg.c, kind)
        return float(weight * np.exp(exponent - e_star))

    points = sorted({p for p in breaks if 0.0 < p < cutoff})
    result = integrate.quad(
        integrand,
        0.0,
        cutoff,
        epsabs=qp.abs_tol,
        epsrel=qp.rel_tol,
        limit=qp.max_subdivisions,
        points=points or None,
        full_output=1,
    )
    if len(result) > 3:
        raise NumericalError(
            f"radial {kind} integral did not converge",
            diagnostics={
                "s": s,
                "rho": rho,
                "abserr": result[1],
                "subdivisions": result[2].get("last"),
                "message": result[3].splitlines()[0] if result[3] else "",
            },
        )
    return _prefactor(kind, cfg) * result[0] * math.exp(e_star)


def lambda_reduced(s: float, rho: float, cfg: ConeConfig, qp: QuadParams | None = None) -> float:
    return _radial_integral(s, rho, cfg, qp or QuadParams(), "lambda")


def mu_reduced(s: float, rho: float, cfg: ConeConfig, qp: QuadParams | None = None) -> float:
    return _radial_integral(s, rho, cfg, qp or QuadParams(), "mu")


def mu_complement_reduced(
    s: float, rho: float, cfg: ConeConfig, qp: QuadParams | None = None
) -> float:
    """1 - mu(s, rho), integrated over the complement of the cone."""
    return _radial_integral(s, rho, cfg, qp or QuadParams(), "mu_complement")


def lambda_(xi: FourMomentum, cfg: ConeConfig, qp: QuadParams | None = None) -> float:
    """Symbol of the free-particle Hamiltonian H_S = lambda(xi) I."""
    return lambda_reduced(*xi.radial, cfg, qp)


def mu(xi: FourMomentum, cfg: ConeConfig, qp: QuadParams | None = None) -> float:
    return mu_reduced(*xi.radial, cfg, qp)


def evaluate_log_radial(
    s: np.ndarray,
    rho: np.ndarray,
    cfg: ConeConfig,
    qp: QuadParams | None = None,
    *,
    panel_width: float = 0.5,
    order: int = 16,
    chunk: int = 256,
) -> dict[Kind, np.ndarray]:
    """Vectorized log lambda, log mu and log(1 - mu) at many (s, rho) points.

    Uses a composite Gauss-Legendre rule in r shared by all points; the
    integrands are entire functions of r, so panels of width 0.5 resolve them
    to rounding.
    """
    qp = qp or QuadParams()
    s = np.atleast_1d(np.asarray(s, dtype=float)).ravel()
    rho = np.atleast_1d(np.asarray(rho, dtype=float)).ravel()
    if s.shape != rho.shape:
        raise ConfigurationError("s and rho must have the same number of points")
    if np.any(rho < 0):
        raise DomainError("rho must be >= 0")
    far = int(np.argmax(np.hypot(s, rho)))
    cutoff = qp.cutoff_for(float(s[far]), float(rho[far]))
    panels = max(1, math.ceil(cutoff / panel_width))
    x, w = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(0.0, cutoff, panels + 1)
    half = 0.5 * np.diff(edges)
    nodes = (edges[:-1, None] + half[:, None] * (x[None, :] + 1.0)).ravel()
    weights = (half[:, None] * w[None, :]).ravel()

    oriented = cfg.sign * s
    out: dict[Kind, np.ndarray] = {}
    for kind in ("lambda", "mu", "mu_complement"):
        values = np.empty_like(s)
        for start in range(0, s.size, chunk):
            sl = slice(start, start + chunk)
            exponent, weight = _radial_terms(
                nodes[None, :], oriented[sl, None], rho[sl, None], cfg.c, kind
            )
            peak = np.max(exponent, axis=1, keepdims=True)
            total = np.sum(weights * weight * np.exp(exponent - peak), axis=1)
            with np.errstate(divide="ignore", invalid="ignore"):
                values[sl] = np.log(_prefactor(kind, cfg) * total) + peak[:, 0]
        out[kind] = values
    logger.debug("evaluated %d radial points on %d r-nodes", s.size, nodes.size)
    return out


def lambda_asymptotic(xi: FourMomentum, cfg: ConeConfig) -> float:
    """Leading term chi_R(xi) q(xi) / (4 m c)."""
    return chi_cone(xi, cfg) * minkowski_q(xi) / (4.0 * cfg.m * cfg.c)


@dataclass(frozen=True)
class AsymptoticRow:
    t: float
    scaled_lambda: float
    leading: float
    ratio: float


def asymptotic_convergence(
    xi: FourMomentum,
    t_list: list[float],
    cfg: ConeConfig,
    qp: QuadParams | None = None,
) -> list[AsymptoticRow]:
    """Rows (t, lambda(t xi) / t^2, leading term, ratio) approaching ratio 1."""
    if chi_cone(xi, cfg) != 1 or minkowski_q(xi) <= 0:
        raise DomainError(f"{xi.xi} is not strictly inside the cone")
    ts = [float(t) for t in t_list]
    if not ts or any(t <= 0 for t in ts) or any(b <= a for a, b in zip(ts, ts[1:])):
        raise DomainError("t_list must be positive and strictly increasing")
    leading = lambda_asymptotic(xi, cfg)
    rows = []
    for t in ts:
        scaled = lambda_(xi.scaled(t), cfg, qp) / t**2
        rows.append(AsymptoticRow(t=t, scaled_lambda=scaled, leading=leading, ratio=scaled / leading))
    return rows


def lorentz_deviation(
    xi: FourMomentum, rapidity: float, cfg: ConeConfig, qp: QuadParams | None = None
) -> float:
    """Relative change of lambda under a boost; reported, not expected to vanish."""
    if rapidity == 0.0:
        return 0.0
    base = lambda_(xi, cfg, qp)
    return abs(lambda_(boost(xi, rapidity), cfg, qp) - base) / base


def lambda_gradient(
    xi: FourMomentum,
    cfg: ConeConfig,
    qp: QuadParams | None = None,
    step: float = 1e-3,
) -> np.ndarray:
    """Central finite-difference gradient of lambda with respect to xi."""
    s, rho = xi.radial
    d_s = (lambda_reduced(s + step, rho, cfg, qp) - lambda_reduced(s - step, rho, cfg, qp)) / (
        2.0 * step
    )
    grad = np.zeros(4)
    grad[0] = d_s
    if rho > 0.0:
        # lambda is even in rho, so |rho - step| keeps the stencil symmetric
        d_rho = (
            lambda_reduced(s, rho + step, cfg, qp) - lambda_reduced(s, abs(rho - step), cfg, qp)
        ) / (2.0 * step)
        grad[1:] = d_rho * np.asarray(xi.xi[1:]) / rho
    return grad
