"""One-dimensional mixing distributions with explicit atoms.

Models and recovery both push distributions around: the radius law of a
random ball, the intensity mixing law of a Poisson storm process, the scale
mixing law of a variance-mixed Gaussian.  These laws can be absolutely
continuous, purely atomic, or mixed (a tent-shaped TCF inverts to a radius
law that is a single point mass), so the representation keeps the two parts
separate:

* ``pdf`` is the density of the absolutely continuous part (may be ``None``),
* ``atoms`` lists ``(location, mass)`` pairs,
* ``cdf`` is the full right-continuous cdf including atoms.

Expectations integrate the density part with :func:`~tailcorr.numerics.quadrature`
and add the atom sum, so error estimates flow through.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError
from .numerics import SpecialFnResult, quadrature

__all__ = [
    "Distribution1D",
    "point_mass",
    "exponential_dist",
    "from_pdf",
    "from_cdf",
    "scale_distribution",
]


@dataclass(frozen=True)
class Distribution1D:
    """A probability law on an interval of the real line.

    Parameters
    ----------
    name:
        Human-readable tag, carried into model fingerprints.
    cdf:
        Full right-continuous cdf (continuous part plus atoms).
    pdf:
        Density of the absolutely continuous part, or ``None`` if the law is
        purely atomic.
    atoms:
        ``(location, mass)`` pairs, sorted by location, masses > 0.
    support:
        ``(lo, hi)`` with the law concentrated on ``[lo, hi]``; ``hi`` may be
        ``inf``.
    quantile:
        Optional analytic quantile function; numeric inversion of ``cdf`` is
        used when absent.
    sampler:
        Optional ``sampler(rng, n) -> ndarray``; inverse-cdf sampling is used
        when absent.
    pdf_singular_exponent:
        Algebraic exponent of the density at the lower support endpoint
        (``pdf(x) ~ (x - lo)^alpha``), forwarded to quadrature.
    pdf_points:
        Interior abscissae where the density has kinks or sharp peaks,
        forwarded to quadrature as subdivision hints.
    """

    name: str
    cdf: Callable[[float], float] | None = None
    pdf: Callable[[float], float] | None = None
    atoms: tuple[tuple[float, float], ...] = ()
    support: tuple[float, float] = (0.0, math.inf)
    quantile: Callable[[float], float] | None = None
    sampler: Callable[[np.random.Generator, int], np.ndarray] | None = None
    pdf_singular_exponent: float = 0.0
    pdf_points: tuple[float, ...] = field(default=())

    def __post_init__(self) -> None:
        lo, hi = self.support
        if not math.isfinite(lo) or hi < lo:
            raise DomainError(f"invalid support {self.support!r}")
        masses = [m for _, m in self.atoms]
        if any(m <= 0 for m in masses):
            raise DomainError(f"atom masses must be positive, got {self.atoms!r}")
        if sum(masses) > 1.0 + 1e-9:
            raise DomainError(f"atom masses sum to {sum(masses)!r} > 1")
        locs = [a for a, _ in self.atoms]
        if locs != sorted(locs):
            raise DomainError("atoms must be sorted by location")
        if self.cdf is None and self.pdf is None and not self.atoms:
            raise DomainError("a distribution needs a cdf, a pdf, or atoms")

    @property
    def atom_mass(self) -> float:
        return sum(m for _, m in self.atoms)

    @property
    def is_purely_atomic(self) -> bool:
        return self.pdf is None and abs(self.atom_mass - 1.0) <= 1e-9

    def cdf_value(self, x: float) -> float:
        """Right-continuous cdf at ``x``."""
        if self.cdf is not None:
            return min(1.0, max(0.0, float(self.cdf(x))))
        lo, _ = self.support
        if x < lo:
            return 0.0
        total = sum(m for a, m in self.atoms if a <= x)
        if self.pdf is not None:
            total += quadrature(self.pdf, lo, min(x, self.support[1]),
                                tol=1e-10,
                                singular_exponent_a=self.pdf_singular_exponent,
                                points=self.pdf_points).value
        return min(1.0, max(0.0, total))

    def expect(self, g: Callable[[float], float], *, tol: float = 1e-9,
               points: Sequence[float] = ()) -> SpecialFnResult:
        """E[g(X)] with an absolute error estimate.

        The continuous part is integrated against ``pdf``; atoms contribute
        exactly.  ``points`` adds subdivision hints (in x) on top of the
        distribution's own.
        """
        value = sum(m * float(g(a)) for a, m in self.atoms)
        err = 0.0
        cont_mass = 1.0 - self.atom_mass
        if cont_mass > 1e-12:
            if self.pdf is None:
                raise DomainError(
                    f"distribution {self.name!r} has continuous mass but no density; "
                    "cannot take expectations")
            lo, hi = self.support
            res = quadrature(lambda x: float(g(x)) * self.pdf(x), lo, hi, tol=tol,
                             singular_exponent_a=self.pdf_singular_exponent,
                             points=tuple(self.pdf_points) + tuple(points))
            value += res.value
            err += res.abs_error_estimate
        return SpecialFnResult(value, err)

    def mean(self, *, tol: float = 1e-9) -> float:
        return self.expect(lambda x: x, tol=tol).value

    def quantile_value(self, q: float) -> float:
        """Generalized inverse cdf: inf{x : cdf(x) >= q}."""
        if not 0.0 < q < 1.0:
            raise DomainError(f"quantile level must be in (0,1), got {q!r}")
        if self.quantile is not None:
            return float(self.quantile(q))
        if self.is_purely_atomic:
            total = 0.0
            for a, m in self.atoms:
                total += m
                if total >= q - 1e-15:
                    return a
            return self.atoms[-1][0]
        lo, hi = self.support
        if not math.isfinite(hi):
            hi = max(lo + 1.0, 1.0)
            while self.cdf_value(hi) < q:
                hi *= 2.0
                if hi > 1e300:
                    raise DomainError(
                        f"quantile {q} of {self.name!r} beyond 1e300")
        # Bisection on the right-continuous cdf handles jumps correctly.
        a, b = lo, hi
        for _ in range(200):
            mid = 0.5 * (a + b)
            if self.cdf_value(mid) >= q:
                b = mid
            else:
                a = mid
            if b - a <= 1e-14 * max(1.0, abs(b)):
                break
        return b

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        if self.sampler is not None:
            out = np.asarray(self.sampler(rng, n), dtype=float)
            if out.shape != (n,):
                raise DomainError(
                    f"sampler of {self.name!r} returned shape {out.shape}, "
                    f"expected ({n},)")
            return out
        u = rng.uniform(1e-12, 1.0 - 1e-12, size=n)
        return np.array([self.quantile_value(q) for q in u])


def point_mass(x: float, name: str | None = None) -> Distribution1D:
    """The law concentrated at a single point."""
    xf = float(x)
    return Distribution1D(
        name=name or f"point_mass({xf:g})",
        cdf=lambda s: 1.0 if s >= xf else 0.0,
        atoms=((xf, 1.0),),
        support=(xf, xf),
        quantile=lambda q: xf,
        sampler=lambda rng, n: np.full(n, xf),
    )


def exponential_dist(rate: float = 1.0, name: str | None = None) -> Distribution1D:
    """Exponential law with the given rate (mean 1/rate)."""
    if rate <= 0:
        raise DomainError(f"rate must be positive, got {rate!r}")
    r = float(rate)
    return Distribution1D(
        name=name or f"exponential(rate={r:g})",
        cdf=lambda s: -math.expm1(-r * s) if s > 0 else 0.0,
        pdf=lambda s: r * math.exp(-r * s) if s > 0 else 0.0,
        support=(0.0, math.inf),
        quantile=lambda q: -math.log1p(-q) / r,
        sampler=lambda rng, n: rng.exponential(1.0 / r, size=n),
    )


def from_pdf(name: str, pdf: Callable[[float], float],
             support: tuple[float, float] = (0.0, math.inf), *,
             singular_exponent: float = 0.0,
             points: Sequence[float] = ()) -> Distribution1D:
    """Absolutely continuous law from a density; cdf by quadrature."""
    lo, hi = support

    def cdf(s: float) -> float:
        if s <= lo:
            return 0.0
        return min(1.0, quadrature(pdf, lo, min(s, hi), tol=1e-10,
                                   singular_exponent_a=singular_exponent,
                                   points=points).value)

    return Distribution1D(name=name, cdf=cdf, pdf=pdf, support=support,
                          pdf_singular_exponent=singular_exponent,
                          pdf_points=tuple(points))


def scale_distribution(dist: Distribution1D, c: float,
                       name: str | None = None) -> Distribution1D:
    """The law of c*X for X ~ dist and c > 0."""
    if c <= 0:
        raise DomainError(f"scale factor must be positive, got {c!r}")
    cf = float(c)
    lo, hi = dist.support
    cdf = (lambda s: dist.cdf(s / cf)) if dist.cdf is not None else None
    pdf = (lambda s: dist.pdf(s / cf) / cf) if dist.pdf is not None else None
    quantile = ((lambda q: cf * dist.quantile(q))
                if dist.quantile is not None else None)
    sampler = ((lambda rng, n: cf * dist.sampler(rng, n))
               if dist.sampler is not None else None)
    return Distribution1D(
        name=name or f"{cf:g}*{dist.name}",
        cdf=cdf,
        pdf=pdf,
        atoms=tuple((cf * a, m) for a, m in dist.atoms),
        support=(cf * lo, cf * hi if math.isfinite(hi) else math.inf),
        quantile=quantile,
        sampler=sampler,
        pdf_singular_exponent=dist.pdf_singular_exponent,
        pdf_points=tuple(cf * p for p in dist.pdf_points),
    )


def from_cdf(name: str, cdf: Callable[[float], float],
             support: tuple[float, float] = (0.0, math.inf), *,
             pdf: Callable[[float], float] | None = None,
             atoms: Sequence[tuple[float, float]] = (),
             quantile: Callable[[float], float] | None = None) -> Distribution1D:
    """Law given by its full cdf, optionally with density part and atoms."""
    return Distribution1D(name=name, cdf=cdf, pdf=pdf,
                          atoms=tuple(atoms), support=support,
                          quantile=quantile)


def stieltjes_expect(g: Callable[[float], float], cdf: Callable[[float], float],
                     lo: float, hi: float, *, n: int = 4000) -> SpecialFnResult:
    """E[g(X)] for X ~ cdf by midpoint Lebesgue-Stieltjes sums.

    Fallback for laws given only through a cdf (no density, unknown atoms).
    The error estimate is the difference between the n-panel and n/2-panel
    sums, which is honest for functions of bounded variation.
    """
    if hi <= lo:
        return SpecialFnResult(0.0, 0.0)

    def riemann(m: int) -> float:
        xs = np.linspace(lo, hi, m + 1)
        cs = np.array([cdf(x) for x in xs])
        mids = 0.5 * (xs[:-1] + xs[1:])
        return float(np.sum([g(x) for x in mids] * np.diff(cs)))

    coarse = riemann(n // 2)
    fine = riemann(n)
    return SpecialFnResult(fine, abs(fine - coarse))


__all__.append("stieltjes_expect")
