from __future__ import annotations

import math

import numpy as np
import pytest

from twoproj_cli.bargmann import (
    PolynomialSymbol,
    QuadratureSpec,
    annihilation_matrix,
    annihilation_symbol,
    bargmann_synthesis_1d,
    build_basis,
    constant_symbol,
    creation_matrix,
    creation_symbol,
    harmonic_oscillator_check,
    hermite_functions,
    oscillator_operator,
    oscillator_symbol,
    synthesis_isometry_defect,
    toeplitz_matrix,
)
from twoproj_cli.errors import ConfigurationError


def test_basis_enumeration():
    basis = build_basis(1, 2)
    assert [idx.alpha for idx in basis.indices] == [(0,), (1,), (2,)]
    assert len(build_basis(4, 1)) == 5
    for n, cap in [(1, 5), (2, 3), (3, 2), (4, 2)]:
        assert len(build_basis(n, cap)) == math.comb(n + cap, n)


def test_basis_ordering_by_degree_then_lexicographic():
    alphas = [idx.alpha for idx in build_basis(2, 2).indices]
    assert alphas == [(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0)]


@pytest.mark.parametrize(("n", "cap"), [(0, 1), (1, -1)])
def test_basis_rejects_bad_parameters(n, cap):
    with pytest.raises(ConfigurationError):
        build_basis(n, cap)


@pytest.mark.parametrize(("n", "cap"), [(1, 4), (2, 3)])
def test_gram_matrix_is_identity(n, cap):
    basis = build_basis(n, cap)
    gram = toeplitz_matrix(constant_symbol(), basis).entries
    np.testing.assert_allclose(gram, np.eye(len(basis)), atol=1e-10)


def test_oscillator_one_variable():
    matrix = toeplitz_matrix(oscillator_symbol(), build_basis(1, 3))
    np.testing.assert_allclose(matrix.entries, np.diag([1.0, 2.0, 3.0, 4.0]), atol=1e-10)


def test_oscillator_two_variables():
    matrix = toeplitz_matrix(oscillator_symbol(), build_basis(2, 1))
    np.testing.assert_allclose(matrix.entries, np.diag([2.0, 3.0, 3.0]), atol=1e-10)


@pytest.mark.parametrize(("n", "cap", "tol"), [(1, 5, 1e-8), (2, 3, 1e-8), (1, 0, 1e-10)])
def test_harmonic_oscillator_check(n, cap, tol):
    assert harmonic_oscillator_check(n, cap) <= tol


def test_oscillator_operator_matches_degrees():
    basis = build_basis(2, 2)
    np.testing.assert_array_equal(np.diag(oscillator_operator(basis)), 2 + basis.degrees)


def test_creation_symbol_gives_creation_operator():
    basis = build_basis(2, 3)
    for j in range(2):
        z = toeplitz_matrix(creation_symbol(j), basis).entries
        np.testing.assert_allclose(z, creation_matrix(basis, j), atol=1e-10)
        zbar = toeplitz_matrix(annihilation_symbol(j), basis).entries
        np.testing.assert_allclose(zbar, annihilation_matrix(basis, j), atol=1e-10)


def test_toeplitz_is_hermitian():
    matrix = toeplitz_matrix(oscillator_symbol(), build_basis(2, 2))
    assert matrix.hermitian_defect() <= 1e-12


def test_momentum_symbol_keeps_imaginary_entries():
    basis = build_basis(2, 3)
    for j in range(2):
        symbol = PolynomialSymbol(f"p{j}", lambda q, p, j=j: p[j], 1)
        entries = toeplitz_matrix(symbol, basis).entries
        expected = 1j * (annihilation_matrix(basis, j) - creation_matrix(basis, j)) / math.sqrt(2.0)
        assert np.max(np.abs(entries)) > 0.1
        np.testing.assert_allclose(entries, expected, atol=1e-10)


def test_mixed_symbol_q_times_p():
    basis = build_basis(1, 4)
    symbol = PolynomialSymbol("qp", lambda q, p: q[0] * p[0], 2)
    matrix = toeplitz_matrix(symbol, basis)
    up = creation_matrix(basis, 0)
    down = annihilation_matrix(basis, 0)
    expected = (up @ up - down @ down) / 2j
    np.testing.assert_allclose(matrix.entries, expected, atol=1e-10)
    assert matrix.hermitian_defect() <= 1e-12


def test_underresolved_quadrature_is_rejected():
    with pytest.raises(ConfigurationError):
        toeplitz_matrix(oscillator_symbol(), build_basis(1, 3), QuadratureSpec(2))


def test_hermite_functions_orthonormal():
    t, w = np.polynomial.hermite.hermgauss(40)
    h = hermite_functions(t, 12, gaussian=False)
    np.testing.assert_allclose((h * w) @ h.T, np.eye(12), atol=1e-12)


def test_synthesis_ground_state_is_gaussian():
    x = np.linspace(-5.0, 5.0, 101)
    np.testing.assert_allclose(
        bargmann_synthesis_1d([1.0], x), math.pi**-0.25 * np.exp(-0.5 * x**2), atol=1e-15
    )


def test_synthesis_is_isometric():
    assert synthesis_isometry_defect(8) <= 1e-10
    t, w = np.polynomial.hermite.hermgauss(20)
    f = bargmann_synthesis_1d(np.array([1.0, 1.0]) / math.sqrt(2.0), t)
    norm = math.sqrt(float(np.sum(w * np.exp(t**2) * np.abs(f) ** 2)))
    assert norm == pytest.approx(1.0, abs=1e-10)
