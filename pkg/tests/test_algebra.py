from __future__ import annotations

import math

import numpy as np
import pytest

from twoproj_cli.algebra import (
    SCALAR,
    SPINOR,
    VECTOR,
    SpinParameter,
    classify_propagation,
    classify_spin,
    commutator_norm,
    degrees_of_freedom,
    difference_squared_value,
    luminal_spectrum,
    observable_sum,
    projection_values,
    rep_pq,
    rep_pr,
    represent_word,
    spin_value,
)
from twoproj_cli.errors import DomainError


@pytest.mark.parametrize(
    ("p", "expected"),
    [
        (0.0, [[1.0, 0.0], [0.0, 0.0]]),
        (0.5, [[0.5, 0.5], [0.5, 0.5]]),
        (1.0, [[0.0, 0.0], [0.0, 1.0]]),
    ],
)
def test_rep_pq_values(p, expected):
    np.testing.assert_allclose(rep_pq(p), expected, atol=1e-15)


def test_rep_pr_is_rank_one_projector():
    r = rep_pr()
    np.testing.assert_array_equal(r, [[1.0, 0.0], [0.0, 0.0]])
    np.testing.assert_array_equal(r @ r, r)
    assert np.trace(r) == 1.0


def test_projectors_idempotent_and_symmetric():
    rng = np.random.default_rng(0)
    for p in rng.uniform(0.0, 1.0, 1000):
        q = rep_pq(p)
        assert np.max(np.abs(q @ q - q)) <= 1e-14
        assert np.max(np.abs(q - q.T)) <= 1e-14


def test_difference_squared_is_scalar():
    rng = np.random.default_rng(1)
    for p in rng.uniform(0.0, 1.0, 200):
        diff = rep_pq(p) - rep_pr()
        assert np.max(np.abs(diff @ diff - p * np.eye(2))) <= 1e-12
    assert difference_squared_value(0.0) == 0.0
    assert difference_squared_value(1.0) == 1.0
    assert difference_squared_value(0.25) == 0.25


@pytest.mark.parametrize(
    ("p", "expected"),
    [
        (0.0, [[2.0, 0.0], [0.0, 0.0]]),
        (0.5, [[1.5, 0.5], [0.5, 0.5]]),
        (1.0, [[1.0, 0.0], [0.0, 1.0]]),
    ],
)
def test_observable_sum_example_matrices(p, expected):
    np.testing.assert_array_equal(observable_sum(p), expected)


def test_represent_word():
    np.testing.assert_allclose(represent_word("Q", 0.5), rep_pq(0.5))
    np.testing.assert_allclose(represent_word(["Q", "R", "Q"], 0.5), np.full((2, 2), 0.25))
    np.testing.assert_array_equal(represent_word("RR", 0.3), rep_pr())


def test_represent_word_is_multiplicative():
    rng = np.random.default_rng(2)
    for _ in range(100):
        p = rng.uniform()
        w1 = "".join(rng.choice(["Q", "R"], size=rng.integers(1, 6)))
        w2 = "".join(rng.choice(["Q", "R"], size=rng.integers(1, 6)))
        np.testing.assert_allclose(
            represent_word(w1 + w2, p),
            represent_word(w1, p) @ represent_word(w2, p),
            atol=1e-12,
        )


@pytest.mark.parametrize("word", ["", "QX"])
def test_represent_word_rejects_bad_words(word):
    with pytest.raises(DomainError):
        represent_word(word, 0.5)


@pytest.mark.parametrize("p", [-0.1, 1.5, math.nan])
def test_spin_parameter_domain(p):
    with pytest.raises(DomainError):
        SpinParameter(p)
    with pytest.raises(DomainError):
        rep_pq(p)


def test_classify_spin():
    assert classify_spin(0.0) == SCALAR
    assert classify_spin(0.5) == SPINOR
    assert classify_spin(1.0) == VECTOR
    assert classify_spin(SpinParameter(0.25)) == SPINOR
    # endpoint snapping
    assert classify_spin(1e-13) == SCALAR
    assert classify_spin(1.0 - 1e-13) == VECTOR
    assert SCALAR.representation_dimension == 1
    assert SPINOR.representation_dimension == 2 and not SPINOR.reducible
    assert VECTOR.representation_dimension == 2 and VECTOR.reducible


def test_commutator_norm():
    assert commutator_norm(0.0) <= 1e-14
    assert commutator_norm(1.0) <= 1e-14
    assert commutator_norm(0.5) == pytest.approx(math.sqrt(2.0) / 2.0, abs=1e-15)
    assert min(commutator_norm(p) for p in np.linspace(0.01, 0.99, 99)) > 0.0


def test_endpoints_are_simultaneously_diagonal():
    for p in (0.0, 1.0):
        q = rep_pq(p)
        assert q[0, 1] == 0.0 and q[1, 0] == 0.0


def test_classify_propagation():
    assert luminal_spectrum() == frozenset({0.0, 1.0})
    assert classify_propagation(True) == frozenset({VECTOR})
    assert SPINOR not in classify_propagation(True)
    assert classify_propagation(False) == frozenset({SCALAR, SPINOR, VECTOR})


def test_spin_values_and_degrees_of_freedom():
    assert [spin_value(s) for s in (SCALAR, SPINOR, VECTOR)] == [0.0, 0.5, 1.0]
    assert [degrees_of_freedom(s) for s in (SCALAR, SPINOR, VECTOR)] == [1, 2, 3]
    assert projection_values(SPINOR) == frozenset({0.5})
    assert projection_values(VECTOR) == frozenset({0.0, 1.0})
