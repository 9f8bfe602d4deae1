"""Tabular results behind each subcommand, as (columns, rows) pairs."""

from __future__ import annotations

from collections.abc import Sequence
from typing import Any

import numpy as np

from .algebra import (
    classify_spin,
    commutator_norm,
    degrees_of_freedom,
    difference_squared_value,
    observable_sum,
    rep_pq,
    represent_word,
    spin_value,
)
from .bargmann import (
    FockBasis,
    PolynomialSymbol,
    ToeplitzMatrix,
    annihilation_symbol,
    build_basis,
    constant_symbol,
    creation_symbol,
    oscillator_operator,
    oscillator_symbol,
    toeplitz_matrix,
)
from .cone import (
    ConeConfig,
    FourMomentum,
    MonteCarlo,
    QuadParams,
    TensorGrid,
    asymptotic_convergence,
    lambda_oracle,
    lambda_reduced,
    lorentz_deviation,
    mu_complement_reduced,
    mu_oracle,
    mu_reduced,
)
from .errors import ConfigurationError
from .evolution import Snapshot, grid_nodes
from .spectrum import SpectrumReport

Table = tuple[list[str], list[list[Any]]]

ORACLES = ("none", "tensor", "montecarlo")
TOEPLITZ_SYMBOLS = ("oscillator", "constant", "creation", "annihilation")


def _flat(matrix: np.ndarray) -> list[float]:
    return [float(v) for v in np.asarray(matrix).ravel()]


def algebra_rows(ps: Sequence[float], word: str | None = None) -> Table:
    columns = [
        "p",
        *(f"pq_{i}{j}" for i in range(2) for j in range(2)),
        *(f"sum_{i}{j}" for i in range(2) for j in range(2)),
        "spin_class",
        "dimension",
        "reducible",
        "spin",
        "degrees_of_freedom",
        "commutator_norm",
        "difference_squared",
    ]
    if word:
        columns += [f"word_{i}{j}" for i in range(2) for j in range(2)]
    rows = []
    for p in ps:
        spin = classify_spin(p)
        row = [
            float(p),
            *_flat(rep_pq(p)),
            *_flat(observable_sum(p)),
            spin.variant.value,
            spin.representation_dimension,
            spin.reducible,
            spin_value(spin),
            degrees_of_freedom(spin),
            commutator_norm(p),
            difference_squared_value(p),
        ]
        if word:
            row += _flat(represent_word(word, p))
        rows.append(row)
    return columns, rows


def toeplitz_symbol(name: str, j: int = 0) -> PolynomialSymbol:
    match name:
        case "oscillator":
            return oscillator_symbol()
        case "constant":
            return constant_symbol()
        case "creation":
            return creation_symbol(j)
        case "annihilation":
            return annihilation_symbol(j)
    raise ConfigurationError(f"unknown symbol {name!r}, expected one of {TOEPLITZ_SYMBOLS}")


def toeplitz_rows(n: int, cap: int, name: str, j: int = 0) -> tuple[Table, ToeplitzMatrix]:
    basis: FockBasis = build_basis(n, cap)
    if name in ("creation", "annihilation") and not 0 <= j < n:
        raise ConfigurationError(f"variable index {j} out of range for n={n}")
    matrix = toeplitz_matrix(toeplitz_symbol(name, j), basis)
    labels = ["-".join(map(str, index.alpha)) for index in basis.indices]
    rows = [
        [labels[a], labels[b], float(v.real), float(v.imag)]
        for (a, b), v in np.ndenumerate(matrix.entries)
    ]
    return (["row", "col", "re", "im"], rows), matrix


def oscillator_deviation(matrix: ToeplitzMatrix) -> float:
    return float(np.max(np.abs(matrix.entries - oscillator_operator(matrix.basis))))


def _oracle_method(oracle: str, samples: int, nodes: int, seed: int) -> MonteCarlo | TensorGrid | None:
    match oracle:
        case "none":
            return None
        case "tensor":
            return TensorGrid(nodes)
        case "montecarlo":
            return MonteCarlo(samples, seed)
    raise ConfigurationError(f"unknown oracle {oracle!r}, expected one of {ORACLES}")


def _radial_rows(
    quantity: str,
    s_values: Sequence[float],
    rho_values: Sequence[float],
    cfg: ConeConfig,
    qp: QuadParams,
    oracle: str,
    samples: int,
    nodes: int,
    seed: int,
) -> Table:
    """Rows start with s, rho, lambda, mu; extra columns follow."""
    method = _oracle_method(oracle, samples, nodes, seed)
    reference = lambda_oracle if quantity == "lambda" else mu_oracle
    columns = ["s", "rho", "lambda", "mu"]
    if quantity == "mu":
        columns.append("one_minus_mu")
    if method is not None:
        columns += ["oracle", "oracle_error"]
    rows = []
    for s in s_values:
        for rho in rho_values:
            s, rho = float(s), float(rho)
            row = [s, rho, lambda_reduced(s, rho, cfg, qp), mu_reduced(s, rho, cfg, qp)]
            if quantity == "mu":
                row.append(mu_complement_reduced(s, rho, cfg, qp))
            if method is not None:
                result = reference(FourMomentum.of(s, rho), cfg, method)
                row += [result.value, result.error_estimate]
            rows.append(row)
    return columns, rows


def lambda_rows(
    s_values: Sequence[float],
    rho_values: Sequence[float],
    cfg: ConeConfig,
    qp: QuadParams,
    oracle: str = "none",
    samples: int = 1_000_000,
    nodes: int = 32,
    seed: int = 0,
) -> Table:
    return _radial_rows("lambda", s_values, rho_values, cfg, qp, oracle, samples, nodes, seed)


def mu_rows(
    s_values: Sequence[float],
    rho_values: Sequence[float],
    cfg: ConeConfig,
    qp: QuadParams,
    oracle: str = "none",
    samples: int = 1_000_000,
    nodes: int = 32,
    seed: int = 0,
) -> Table:
    """Same grid as lambda_rows plus 1 - mu, integrated directly."""
    return _radial_rows("mu", s_values, rho_values, cfg, qp, oracle, samples, nodes, seed)


def asymptotic_rows(
    xi: FourMomentum, ts: Sequence[float], cfg: ConeConfig, qp: QuadParams
) -> Table:
    columns = ["t", "scaled_lambda", "leading", "ratio"]
    rows: list[list[Any]] = [
        [r.t, r.scaled_lambda, r.leading, r.ratio]
        for r in asymptotic_convergence(xi, list(ts), cfg, qp)
    ]
    return columns, rows


def histogram_rows(report: SpectrumReport) -> Table:
    edges = report.bin_edges
    rows: list[list[Any]] = [
        [float(lo), float(hi), int(count)]
        for lo, hi, count in zip(edges[:-1], edges[1:], report.coverage_histogram)
    ]
    return ["bin_lo", "bin_hi", "count"], rows


def boost_rows(
    xi: FourMomentum, rapidities: Sequence[float], cfg: ConeConfig, qp: QuadParams
) -> Table:
    """lambda is not boost invariant; report by how much it moves."""
    rows: list[list[Any]] = [
        [float(y), lorentz_deviation(xi, float(y), cfg, qp)] for y in rapidities
    ]
    return ["rapidity", "relative_deviation"], rows


def snapshot_rows(snapshot: Snapshot) -> Table:
    grid = snapshot.packet.grid
    nodes = grid_nodes(grid).reshape(-1, 4)[:, : grid.dims]
    amplitudes = snapshot.packet.amplitudes.ravel()
    columns = [*(f"xi{k}" for k in range(grid.dims)), "re", "im", "abs2"]
    rows = [
        [*node, float(a.real), float(a.imag), float(abs(a) ** 2)]
        for node, a in zip(nodes.tolist(), amplitudes)
    ]
    return columns, rows
