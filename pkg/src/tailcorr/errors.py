"""Semantic exception hierarchy for :mod:`tailcorr`.

Public functions never raise bare ``ValueError``/``ArithmeticError``; every
failure mode documented in a contract maps to one of the classes below so
callers can discriminate programmatically.
"""

from __future__ import annotations

__all__ = [
    "TailcorrError",
    "DomainError",
    "QuadratureError",
    "KinkError",
    "ModelError",
    "NotInClassError",
    "SimulationError",
    "ConfigError",
]


class TailcorrError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(TailcorrError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class QuadratureError(TailcorrError, ArithmeticError):
    """Adaptive quadrature failed to converge to the requested tolerance.

    Carries the best available estimate so callers can inspect what was
    achieved before deciding how to proceed.
    """

    def __init__(self, message: str, value: float | None = None,
                 abs_error_estimate: float | None = None) -> None:
        super().__init__(message)
        self.value = value
        self.abs_error_estimate = abs_error_estimate


class KinkError(TailcorrError, ValueError):
    """Numerical differentiation was requested too close to a declared kink."""

    def __init__(self, message: str, x: float | None = None,
                 kink: float | None = None) -> None:
        super().__init__(message)
        self.x = x
        self.kink = kink


class ModelError(TailcorrError, ValueError):
    """A model violates its construction invariants."""


class NotInClassError(TailcorrError, ValueError):
    """An inversion produced a negative density/shape value beyond tolerance,
    certifying that the input does not belong to the claimed class.

    Carries a witness point.
    """

    def __init__(self, message: str, witness: float | tuple | None = None) -> None:
        super().__init__(message)
        self.witness = witness


class SimulationError(TailcorrError, RuntimeError):
    """Simulation failed (e.g. non-positive-definite covariance).

    ``min_eigenvalue`` is populated for Cholesky failures.
    """

    def __init__(self, message: str, min_eigenvalue: float | None = None) -> None:
        super().__init__(message)
        self.min_eigenvalue = min_eigenvalue


class ConfigError(TailcorrError, ValueError):
    """A CLI/model configuration document is malformed.

    ``address`` is a dotted path to the offending field when known.
    """

    def __init__(self, message: str, address: str | None = None) -> None:
        super().__init__(message if address is None else f"{address}: {message}")
        self.address = address
