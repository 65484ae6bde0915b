"""Showcase model suites: distinct process classes sharing one TCF.

Two ready-made families demonstrate that the tail correlation function does
not identify the process class:

* the **erfc-sqrt suite**: a Brown-Resnick process with variogram 8|t|, a
  mixed Poisson storm process with an arctan intensity mixing law, a moving
  maxima process with a deterministic radial shape, and a random-ball mixture
  — all with chi(t) = erfc(sqrt(|t|)),
* the **bounded-gauss suite**: a Brown-Resnick process with the bounded
  variogram 1.62(1 - e^{-|t|}), an extremal Gaussian and an extremal binary
  Gaussian process with matched correlations — all with
  chi(t) = erfc(0.45 sqrt(1 - e^{-|t|})).  (0.45 = sqrt(1.62/8).)

The closed forms below are mutually consistent by construction; the test
suite re-derives the shape and radius laws independently through the
inversion formulas and checks every pairing numerically.
"""

from __future__ import annotations

import math

from .distributions import Distribution1D
from .models import (
    BRModel,
    EBGModel,
    EGModel,
    M2rModel,
    M3bModel,
    MPSModel,
    TcfModel,
)
from .radial import (
    Correlation,
    RadialFunction,
    correlation_from_callable,
    bounded_variogram,
    erfc_sqrt,
    exponential_correlation,
    fbm_variogram,
)
from .numerics import erf, erfc

__all__ = [
    "erfc_sqrt_chi",
    "erfc_sqrt_shape",
    "erfc_sqrt_diameter_density",
    "erfc_sqrt_radius_law",
    "erfc_sqrt_mps_mixing",
    "erfc_sqrt_models",
    "erfc_sqrt_models_1d",
    "bounded_gauss_chi",
    "bounded_gauss_lambda",
    "bounded_gauss_correlations",
    "bounded_gauss_models",
]


# ---------------------------------------------------------------------------
# erfc-sqrt suite: chi(t) = erfc(sqrt(t))
# ---------------------------------------------------------------------------


def erfc_sqrt_chi() -> RadialFunction:
    """The common TCF erfc(sqrt(t)) of the suite, with analytic derivatives."""
    return erfc_sqrt()


def erfc_sqrt_shape(dim: int = 3) -> RadialFunction:
    """The deterministic moving-maxima shape with TCF erfc(sqrt(t)).

    d=3: f(u) = (1 + 4u) e^{-2u} / (pi^{3/2} (2u)^{5/2});
    d=1: f(u) = e^{-2u} / sqrt(2 pi u).
    Both integrate to 1 over R^d and diverge algebraically at 0.
    """
    if dim == 3:
        c = math.pi**1.5 * 2.0**2.5
        return RadialFunction(
            name="erfc_sqrt_shape_3d",
            func=lambda u: (1.0 + 4.0 * u) * math.exp(-2.0 * u) / (c * u**2.5),
            zero_exponent=-2.5,
        )
    if dim == 1:
        return RadialFunction(
            name="erfc_sqrt_shape_1d",
            func=lambda u: math.exp(-2.0 * u) / math.sqrt(2.0 * math.pi * u),
            zero_exponent=-0.5,
        )
    raise ValueError(f"shape available for dim 1 and 3 only, got {dim!r}")


def erfc_sqrt_diameter_density(dim: int = 3):
    """Density k of the ball diameter 2R in the random-ball representation.

    d=3: k(s) = (4s^2 + 8s + 5) e^{-s} / (12 sqrt(pi s));
    d=1: k(s) = (2s + 1) e^{-s} / (2 sqrt(pi s)).
    """
    if dim == 3:
        return lambda s: ((4.0 * s * s + 8.0 * s + 5.0) * math.exp(-s)
                          / (12.0 * math.sqrt(math.pi * s)))
    if dim == 1:
        return lambda s: ((2.0 * s + 1.0) * math.exp(-s)
                          / (2.0 * math.sqrt(math.pi * s)))
    raise ValueError(f"density available for dim 1 and 3 only, got {dim!r}")


def erfc_sqrt_radius_law(dim: int = 3) -> Distribution1D:
    """Law of the ball radius R (the diameter density rescaled to R = S/2)."""
    k = erfc_sqrt_diameter_density(dim)
    return Distribution1D(
        name=f"erfc_sqrt_radius_{dim}d",
        pdf=lambda r: 2.0 * k(2.0 * r),
        support=(0.0, math.inf),
        pdf_singular_exponent=-0.5,
    )


def erfc_sqrt_mps_mixing() -> Distribution1D:
    """Intensity mixing law F(s) = (2/pi) arctan(sqrt(2s/pi - 1)) on
    (pi/2, inf); its d=2 storm-process Laplace transform is erfc(sqrt(t))."""
    half_pi = 0.5 * math.pi

    def cdf(s: float) -> float:
        if s <= half_pi:
            return 0.0
        return (2.0 / math.pi) * math.atan(math.sqrt(2.0 * s / math.pi - 1.0))

    def pdf(s: float) -> float:
        if s <= half_pi:
            return 0.0
        return 1.0 / (math.pi * s * math.sqrt(2.0 * s / math.pi - 1.0))

    def quantile(q: float) -> float:
        return half_pi * (1.0 + math.tan(half_pi * q) ** 2)

    return Distribution1D(
        name="erfc_sqrt_mps_mixing",
        cdf=cdf,
        pdf=pdf,
        support=(half_pi, math.inf),
        quantile=quantile,
        pdf_singular_exponent=-0.5,
    )


def erfc_sqrt_models() -> dict[str, TcfModel]:
    """The four-process suite sharing chi(t) = erfc(sqrt(t)).

    The moving-maxima members live on R^3 (their 2-D sections carry the same
    TCF); the Brown-Resnick and storm members live on R^2.
    """
    return {
        "BR": BRModel(dim=2, variogram=fbm_variogram(8.0, 1.0)),
        "MPS": MPSModel(dim=2, mixing=erfc_sqrt_mps_mixing()),
        "M2r": M2rModel(dim=3, shape=erfc_sqrt_shape(3)),
        "M3b": M3bModel(dim=3, radius=erfc_sqrt_radius_law(3)),
    }


def erfc_sqrt_models_1d() -> dict[str, TcfModel]:
    """One-dimensional moving-maxima members with TCF erfc(sqrt(t)),
    obtained from the d=1 inversion formulas; used by the simulation loop."""
    return {
        "M2r": M2rModel(dim=1, shape=erfc_sqrt_shape(1)),
        "M3b": M3bModel(dim=1, radius=erfc_sqrt_radius_law(1)),
    }


# ---------------------------------------------------------------------------
# bounded-gauss suite: chi(t) = erfc(0.45 sqrt(1 - e^{-t}))
# ---------------------------------------------------------------------------


def bounded_gauss_lambda() -> float:
    """The variogram sill 1.62 (= 8 * 0.45^2) of the suite."""
    return 1.62


def bounded_gauss_chi():
    """The common TCF erfc(0.45 sqrt(1 - e^{-t})) as a plain callable."""
    return lambda t: float(erfc(0.45 * math.sqrt(-math.expm1(-abs(t)))))


def bounded_gauss_correlations() -> tuple[Correlation, Correlation]:
    """Correlations (rho_EG, rho_EBG) matched so that the extremal Gaussian
    and extremal binary Gaussian processes share the suite's TCF."""

    def rho_eg(t: float) -> float:
        e = float(erf(0.45 * math.sqrt(-math.expm1(-abs(t)))))
        return 1.0 - 2.0 * e * e

    def rho_ebg(t: float) -> float:
        e = float(erf(0.45 * math.sqrt(-math.expm1(-abs(t)))))
        return math.cos(math.pi * e)

    return (
        correlation_from_callable("bounded_gauss_rho_eg", rho_eg),
        correlation_from_callable("bounded_gauss_rho_ebg", rho_ebg),
    )


def bounded_gauss_models(dim: int = 1) -> dict[str, TcfModel]:
    """The three-process suite sharing chi(t) = erfc(0.45 sqrt(1 - e^{-t}))."""
    rho_eg, rho_ebg = bounded_gauss_correlations()
    gamma = bounded_variogram(bounded_gauss_lambda(), exponential_correlation())
    return {
        "BR": BRModel(dim=dim, variogram=gamma),
        "EG": EGModel(dim=dim, correlation=rho_eg),
        "EBG": EBGModel(dim=dim, correlation=rho_ebg),
    }
