from __future__ import annotations

import math
from collections.abc import Iterable
from dataclasses import dataclass
from enum import Enum
from typing import Literal

import numpy as np

from .errors import ConsistencyError, DomainError

__all__ = (
    "ENDPOINT_TOL",
    "SCALAR",
    "SPINOR",
    "VECTOR",
    "Matrix2",
    "Spin",
    "SpinClass",
    "SpinParameter",
    "classify_propagation",
    "classify_spin",
    "commutator_norm",
    "degrees_of_freedom",
    "difference_squared_value",
    "luminal_spectrum",
    "observable_sum",
    "projection_values",
    "rep_pq",
    "rep_pr",
    "represent_word",
    "spin_value",
)

# Inputs this close to 0 or 1 classify as the endpoint.
ENDPOINT_TOL = 1e-12

Generator = Literal["Q", "R"]
Matrix2 = np.ndarray


@dataclass(frozen=True)
class SpinParameter:
    """A point p of the spectrum sp(P_Q - P_R)^2, always in [0, 1]."""

    p: float

    def __post_init__(self) -> None:
        value = float(self.p)
        if not math.isfinite(value) or value < 0.0 or value > 1.0:
            raise DomainError(f"spin parameter must lie in [0, 1], got {self.p!r}")
        object.__setattr__(self, "p", value)


class Spin(Enum):
    SCALAR = "scalar"
    SPINOR = "spinor"
    VECTOR = "vector"


@dataclass(frozen=True)
class SpinClass:
    variant: Spin
    representation_dimension: int
    reducible: bool


SCALAR = SpinClass(Spin.SCALAR, 1, False)
SPINOR = SpinClass(Spin.SPINOR, 2, False)
VECTOR = SpinClass(Spin.VECTOR, 2, True)


def _param(p: SpinParameter | float) -> float:
    if isinstance(p, SpinParameter):
        return p.p
    return SpinParameter(p).p


def rep_pq(p: SpinParameter | float) -> Matrix2:
    """Image of the quantum projection P_Q under the two-projection isomorphism."""
    x = _param(p)
    off = math.sqrt(x * (1.0 - x))
    return np.array([[1.0 - x, off], [off, x]])


def rep_pr() -> Matrix2:
    """Image of the causal projection P_R; independent of p."""
    return np.array([[1.0, 0.0], [0.0, 0.0]])


def represent_word(word: str | Iterable[Generator], p: SpinParameter | float) -> Matrix2:
    """Evaluate a product of the generators Q and R, in word order."""
    letters = list(word)
    if not letters:
        raise DomainError("word must contain at least one generator")
    generators = {"Q": rep_pq(p), "R": rep_pr()}
    result = np.eye(2)
    for letter in letters:
        try:
            result = result @ generators[letter.upper()]
        except KeyError:
            raise DomainError(f"unknown generator {letter!r}, expected Q or R") from None
    return result


def observable_sum(p: SpinParameter | float) -> Matrix2:
    return rep_pq(p) + rep_pr()


def classify_spin(p: SpinParameter | float) -> SpinClass:
    x = _param(p)
    if x <= ENDPOINT_TOL:
        return SCALAR
    if x >= 1.0 - ENDPOINT_TOL:
        return VECTOR
    return SPINOR


def commutator_norm(p: SpinParameter | float) -> float:
    """Frobenius norm of [phi(P_Q), phi(P_R)]; zero exactly at p in {0, 1}."""
    q, r = rep_pq(p), rep_pr()
    return float(np.linalg.norm(q @ r - r @ q, ord="fro"))


def difference_squared_value(p: SpinParameter | float, tol: float = 1e-12) -> float:
    """Check (phi(P_Q) - phi(P_R))^2 = p I and return p."""
    x = _param(p)
    diff = rep_pq(x) - rep_pr()
    deviation = float(np.max(np.abs(diff @ diff - x * np.eye(2))))
    if deviation > tol:
        raise ConsistencyError(
            f"(P_Q - P_R)^2 deviates from p*I by {deviation:.3e} at p={x}"
        )
    return x


def luminal_spectrum() -> frozenset[float]:
    # P_R vanishes on the cone boundary (measure zero), so sp(P_Q)^2 = {0, 1}.
    return frozenset({0.0, 1.0})


def classify_propagation(luminal: bool) -> frozenset[SpinClass]:
    if luminal:
        # 0 is the non-quantum, non-relativistic value and is excluded.
        return frozenset(classify_spin(v) for v in luminal_spectrum() if v > 0.0)
    return frozenset({SCALAR, SPINOR, VECTOR})


_SPIN_VALUES = {Spin.SCALAR: 0.0, Spin.SPINOR: 0.5, Spin.VECTOR: 1.0}
_PROJECTIONS = {
    Spin.SCALAR: frozenset({0.0}),
    Spin.SPINOR: frozenset({0.5}),
    Spin.VECTOR: frozenset({0.0, 1.0}),
}


def spin_value(spin: SpinClass) -> float:
    return _SPIN_VALUES[spin.variant]


def projection_values(spin: SpinClass) -> frozenset[float]:
    """Possible unsigned projections of the spin."""
    return _PROJECTIONS[spin.variant]


def degrees_of_freedom(spin: SpinClass) -> int:
    """2s + 1 for the spin of the class."""
    return round(2.0 * spin_value(spin)) + 1
