"""Truncated Segal-Bargmann (Fock) space numerics.

Basis elements are the normalized monomials e_a(z) = z^a / sqrt(a!), which are
orthonormal for the Gaussian measure pi^-n exp(-|z|^2) dx dy. Symbols are
functions k(q, p) of real phase space variables with z = (q + i p) / sqrt(2),
so that the oscillator symbol (q^2 + p^2) / 2 equals |z|^2.
"""

from __future__ import annotations

import itertools
import logging
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import ConfigurationError, ConsistencyError

__all__ = (
    "FockBasis",
    "MultiIndex",
    "PolynomialSymbol",
    "QuadratureSpec",
    "ToeplitzMatrix",
    "annihilation_matrix",
    "annihilation_symbol",
    "bargmann_synthesis_1d",
    "build_basis",
    "constant_symbol",
    "creation_matrix",
    "creation_symbol",
    "harmonic_oscillator_check",
    "hermite_functions",
    "oscillator_operator",
    "oscillator_symbol",
    "synthesis_isometry_defect",
    "toeplitz_matrix",
)

logger = logging.getLogger(__name__)

# Tensor-product nodes beyond this are refused.
MAX_QUADRATURE_POINTS = 4_000_000


@dataclass(frozen=True, order=True)
class MultiIndex:
    alpha: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(a < 0 for a in self.alpha):
            raise ConfigurationError(f"multi-index components must be >= 0: {self.alpha}")

    @property
    def degree(self) -> int:
        return sum(self.alpha)

    @property
    def factorial(self) -> int:
        return math.prod(math.factorial(a) for a in self.alpha)


@dataclass(frozen=True)
class FockBasis:
    n: int
    degree_cap: int
    indices: tuple[MultiIndex, ...] = field(repr=False)

    def __len__(self) -> int:
        return len(self.indices)

    @cached_property
    def position(self) -> dict[tuple[int, ...], int]:
        return {idx.alpha: i for i, idx in enumerate(self.indices)}

    @property
    def degrees(self) -> np.ndarray:
        return np.array([idx.degree for idx in self.indices])


@dataclass(frozen=True)
class QuadratureSpec:
    """Gauss-Hermite nodes per real axis of the tensor-product rule."""

    nodes_per_axis: int

    def __post_init__(self) -> None:
        if self.nodes_per_axis < 1:
            raise ConfigurationError("nodes_per_axis must be >= 1")

    @classmethod
    def for_basis(cls, basis: FockBasis, symbol_degree: int = 2) -> QuadratureSpec:
        return cls(max(basis.degree_cap + 2, _required_nodes(basis.degree_cap, symbol_degree)))


@dataclass(frozen=True)
class PolynomialSymbol:
    """A polynomial symbol k(q, p); q and p have shape (n, points)."""

    name: str
    evaluate: Callable[[np.ndarray, np.ndarray], np.ndarray]
    degree: int
    real: bool = True


@dataclass(frozen=True)
class ToeplitzMatrix:
    basis: FockBasis
    entries: np.ndarray

    def hermitian_defect(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.conj().T), initial=0.0))


def build_basis(n: int, degree_cap: int) -> FockBasis:
    """All multi-indices with |a| <= degree_cap, ordered by (|a|, lexicographic)."""
    if n < 1:
        raise ConfigurationError(f"number of complex variables must be >= 1, got {n}")
    if degree_cap < 0:
        raise ConfigurationError(f"degree cap must be >= 0, got {degree_cap}")
    alphas = [
        a for a in itertools.product(range(degree_cap + 1), repeat=n) if sum(a) <= degree_cap
    ]
    alphas.sort(key=lambda a: (sum(a), a))
    return FockBasis(n=n, degree_cap=degree_cap, indices=tuple(MultiIndex(a) for a in alphas))


def constant_symbol(value: float = 1.0) -> PolynomialSymbol:
    return PolynomialSymbol(
        name=f"constant({value:g})",
        evaluate=lambda q, p: np.full(q.shape[1], value, dtype=float),
        degree=0,
    )


def oscillator_symbol() -> PolynomialSymbol:
    """H(q, p) = 1/2 sum_j (q_j^2 + p_j^2)."""
    return PolynomialSymbol(
        name="oscillator",
        evaluate=lambda q, p: 0.5 * np.sum(q**2 + p**2, axis=0),
        degree=2,
    )


def creation_symbol(j: int) -> PolynomialSymbol:
    """The coordinate z_j; its Toeplitz operator is a+_j = z_j I."""
    return PolynomialSymbol(
        name=f"z{j}",
        evaluate=lambda q, p: (q[j] + 1j * p[j]) / math.sqrt(2.0),
        degree=1,
        real=False,
    )


def annihilation_symbol(j: int) -> PolynomialSymbol:
    return PolynomialSymbol(
        name=f"conj(z{j})",
        evaluate=lambda q, p: (q[j] - 1j * p[j]) / math.sqrt(2.0),
        degree=1,
        real=False,
    )


def _required_nodes(degree_cap: int, symbol_degree: int) -> int:
    # Per real axis the integrand has degree <= 2 * cap + symbol degree,
    # and N Gauss-Hermite nodes are exact up to degree 2N - 1.
    return degree_cap + (symbol_degree + 2) // 2


def _complex_nodes(n: int, nodes_per_axis: int) -> tuple[np.ndarray, np.ndarray]:
    """Tensor nodes z (shape (n, M)) and weights for pi^-n exp(-|z|^2) dv."""
    points = nodes_per_axis ** (2 * n)
    if points > MAX_QUADRATURE_POINTS:
        raise ConfigurationError(
            f"quadrature would need {points} points (limit {MAX_QUADRATURE_POINTS})"
        )
    t, w = np.polynomial.hermite.hermgauss(nodes_per_axis)
    grids = np.meshgrid(*([t] * (2 * n)), indexing="ij")
    wgrids = np.meshgrid(*([w] * (2 * n)), indexing="ij")
    axes = np.stack([g.ravel() for g in grids])
    weights = np.prod(np.stack([g.ravel() for g in wgrids]), axis=0) / math.pi**n
    z = axes[:n] + 1j * axes[n:]
    return z, weights


def _monomials(basis: FockBasis, z: np.ndarray) -> np.ndarray:
    """Rows are e_a evaluated at every node."""
    powers = np.ones((basis.n, basis.degree_cap + 1, z.shape[1]), dtype=complex)
    for k in range(1, basis.degree_cap + 1):
        powers[:, k] = powers[:, k - 1] * z
    rows = np.empty((len(basis), z.shape[1]), dtype=complex)
    for i, idx in enumerate(basis.indices):
        row = np.ones(z.shape[1], dtype=complex)
        for j, a in enumerate(idx.alpha):
            row = row * powers[j, a]
        rows[i] = row / math.sqrt(idx.factorial)
    return rows


def toeplitz_matrix(
    symbol: PolynomialSymbol,
    basis: FockBasis,
    quad: QuadratureSpec | None = None,
) -> ToeplitzMatrix:
    """Matrix of T_k = P_Q k I on the truncated basis, entry (a, b) = <e_a, T_k e_b>."""
    quad = quad or QuadratureSpec.for_basis(basis, symbol.degree)
    required = _required_nodes(basis.degree_cap, symbol.degree)
    if quad.nodes_per_axis < required:
        raise ConfigurationError(
            f"{quad.nodes_per_axis} nodes per axis are not exact for symbol "
            f"{symbol.name} (degree {symbol.degree}) on cap {basis.degree_cap}; "
            f"need >= {required}"
        )
    z, weights = _complex_nodes(basis.n, quad.nodes_per_axis)
    values = np.asarray(symbol.evaluate(math.sqrt(2.0) * z.real, math.sqrt(2.0) * z.imag))
    e = _monomials(basis, z)
    entries = (e.conj() * (weights * values)) @ e.T
    logger.debug(
        "toeplitz %s on n=%d cap=%d with %d nodes",
        symbol.name,
        basis.n,
        basis.degree_cap,
        weights.size,
    )
    matrix = ToeplitzMatrix(basis=basis, entries=entries)
    if not symbol.real:
        return matrix
    if (defect := matrix.hermitian_defect()) > 1e-9:
        raise ConsistencyError(f"Toeplitz matrix of {symbol.name} not Hermitian: {defect:.3e}")
    # real symbols may still have imaginary off-diagonal entries
    return ToeplitzMatrix(basis=basis, entries=0.5 * (entries + entries.conj().T))


def creation_matrix(basis: FockBasis, j: int) -> np.ndarray:
    """a+_j e_a = sqrt(a_j + 1) e_(a + 1_j), truncated at the cap."""
    out = np.zeros((len(basis), len(basis)))
    for col, idx in enumerate(basis.indices):
        raised = list(idx.alpha)
        raised[j] += 1
        if (row := basis.position.get(tuple(raised))) is not None:
            out[row, col] = math.sqrt(idx.alpha[j] + 1)
    return out


def annihilation_matrix(basis: FockBasis, j: int) -> np.ndarray:
    return creation_matrix(basis, j).T


def oscillator_operator(basis: FockBasis) -> np.ndarray:
    """n I + sum_j z_j d/dz_j, diagonal with entries n + |a|."""
    return np.diag((basis.n + basis.degrees).astype(float))


def harmonic_oscillator_check(n: int, cap: int) -> float:
    """Max deviation of T_H from n I + sum z_j d/dz_j."""
    basis = build_basis(n, cap)
    matrix = toeplitz_matrix(oscillator_symbol(), basis)
    return float(np.max(np.abs(matrix.entries - oscillator_operator(basis))))


def hermite_functions(x: np.ndarray, count: int, gaussian: bool = True) -> np.ndarray:
    """L2-orthonormal Hermite functions h_0..h_(count-1) at x, shape (count, len(x)).

    With gaussian=False the exp(-x^2/2) factor is dropped, leaving the
    polynomials orthonormal for the weight exp(-x^2).
    """
    x = np.asarray(x, dtype=float)
    out = np.zeros((count, *x.shape))
    if count == 0:
        return out
    out[0] = math.pi**-0.25 * (np.exp(-0.5 * x**2) if gaussian else 1.0)
    if count > 1:
        out[1] = math.sqrt(2.0) * x * out[0]
    for k in range(2, count):
        out[k] = math.sqrt(2.0 / k) * x * out[k - 1] - math.sqrt((k - 1) / k) * out[k - 2]
    return out


def bargmann_synthesis_1d(coeffs: Sequence[complex], x_grid: np.ndarray) -> np.ndarray:
    """Image of sum_k c_k z^k / sqrt(k!) in L2(R): sum_k c_k h_k(x)."""
    c = np.asarray(coeffs, dtype=complex)
    return c @ hermite_functions(np.asarray(x_grid, dtype=float), c.size)


def synthesis_isometry_defect(cap: int, nodes: int | None = None) -> float:
    """Max |<R e_j, R e_k> - delta_jk| over the one-dimensional basis up to cap."""
    nodes = nodes or cap + 2
    if nodes < cap + 1:
        raise ConfigurationError(f"{nodes} nodes are not exact for cap {cap}")
    t, w = np.polynomial.hermite.hermgauss(nodes)
    size = cap + 1
    images = np.stack([bargmann_synthesis_1d(np.eye(size)[k], t) for k in range(size)])
    gram = (images.conj() * (w * np.exp(t**2))) @ images.T
    return float(np.max(np.abs(gram - np.eye(size))))
