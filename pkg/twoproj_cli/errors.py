from __future__ import annotations

from collections.abc import Mapping
from typing import Any

__all__ = (
    "ConfigurationError",
    "ConsistencyError",
    "DomainError",
    "NumericalError",
    "TwoProjError",
    "VerificationFailed",
    "WrapAroundError",
)


class TwoProjError(Exception):
    """Base class for every error raised by twoproj-cli."""


class DomainError(TwoProjError, ValueError):
    """An argument lies outside the domain of the operation."""


class ConfigurationError(TwoProjError, ValueError):
    """Invalid parameters: basis sizes, quadrature, grids, run configs."""


class NumericalError(TwoProjError, ArithmeticError):
    """A numerical procedure did not converge."""

    def __init__(self, message: str, diagnostics: Mapping[str, Any] | None = None):
        super().__init__(message)
        self.diagnostics: dict[str, Any] = dict(diagnostics or {})

    def __str__(self) -> str:
        base = super().__str__()
        if not self.diagnostics:
            return base
        details = ", ".join(f"{k}={v}" for k, v in self.diagnostics.items())
        return f"{base} ({details})"


class WrapAroundError(NumericalError):
    """A wave packet reached the periodic boundary of its grid."""


class ConsistencyError(TwoProjError, RuntimeError):
    """An internal identity failed beyond its tolerance."""


class VerificationFailed(TwoProjError):
    """At least one check of the verify suite failed."""

    def __init__(self, failed: list[str]):
        super().__init__(f"{len(failed)} check(s) failed: {', '.join(failed)}")
        self.failed = failed
