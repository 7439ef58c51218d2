"""Radial initial data with closed-form Fourier transforms.

Fourier convention used throughout the package::

    g_hat(xi) = int exp(-i x.xi) g(x) dx,      ||g||_2^2 = (2 pi)^{-n} ||g_hat||_2^2

so for a radial function ``||g||_2^2 = (2 pi)^{-n} S_{n-1} int_0^inf g_hat(r)^2 r^{n-1} dr``
with sphere areas S_0 = 2, S_1 = 2 pi, S_2 = 4 pi.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from .symbols import DomainError

SPHERE_AREA = {1: 2.0, 2: 2.0 * math.pi, 3: 4.0 * math.pi}

KINDS = ("gaussian", "mexican_hat", "scaled_gaussian")


def plancherel_factor(n: int) -> float:
    """(2 pi)^{-n} times the area of the unit sphere in R^n."""
    return SPHERE_AREA[n] / (2.0 * math.pi) ** n


class ResolutionError(ValueError):
    """Grid too coarse for the requested profile."""


@dataclass(frozen=True)
class RadialProfile:
    """Radial datum ``g`` together with its mass and norms.

    ``kind`` is ``gaussian`` (or ``scaled_gaussian``, a Gaussian whose
    amplitude was chosen from a prescribed mass) or ``mexican_hat``, the
    Laplacian of a Gaussian, which has zero mass.
    """

    kind: str
    amplitude: float
    sigma: float
    dim: int
    mass: float = field(init=False)
    l1_norm: float = field(init=False)
    l2_norm: float = field(init=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown profile kind {self.kind!r}")
        if not self.sigma > 0:
            raise DomainError(f"sigma must be positive, got {self.sigma}")
        if self.dim not in SPHERE_AREA:
            raise DomainError(f"dimension {self.dim} not supported")
        object.__setattr__(self, "mass", float(self.fourier_side(0.0)))
        object.__setattr__(self, "l1_norm", self._l1())
        object.__setattr__(self, "l2_norm", self._l2())

    @property
    def gauss_mass(self) -> float:
        """Mass of the underlying Gaussian ``A exp(-|x|^2 / 2 sigma^2)``."""
        return self.amplitude * (2.0 * math.pi * self.sigma**2) ** (self.dim / 2)

    @property
    def poly_power(self) -> int:
        """Power p in the Fourier-side envelope |g_hat| <= C r^p exp(-sigma^2 r^2/2)."""
        return 2 if self.kind == "mexican_hat" else 0

    @property
    def gauss_exponent(self) -> float:
        """Exponent a with g_hat(r)^2 proportional to exp(-a r^2)."""
        return self.sigma**2

    def fourier_side(self, r):
        r = np.asarray(r, dtype=float)
        base = self.gauss_mass * np.exp(-0.5 * self.sigma**2 * r * r)
        if self.kind == "mexican_hat":
            return -r * r * base
        return base

    def fourier_defect(self, r):
        """``g_hat(r) - m_g`` without cancellation near r = 0."""
        r = np.asarray(r, dtype=float)
        if self.kind == "mexican_hat":
            return self.fourier_side(r)
        return self.gauss_mass * np.expm1(-0.5 * self.sigma**2 * r * r)

    def physical(self, rho):
        """g as a function of the radius |x|."""
        rho = np.asarray(rho, dtype=float)
        s2 = self.sigma**2
        base = self.amplitude * np.exp(-0.5 * rho * rho / s2)
        if self.kind == "mexican_hat":
            return base * (rho * rho / (s2 * s2) - self.dim / s2)
        return base

    def _l1(self) -> float:
        if self.kind != "mexican_hat":
            return abs(self.gauss_mass)
        if self.amplitude == 0:
            return 0.0
        area = SPHERE_AREA[self.dim]
        knot = self.sigma * math.sqrt(self.dim)

        def f(rho):
            return abs(self.physical(rho)) * rho ** (self.dim - 1)

        inner, _ = integrate.quad(f, 0.0, knot, epsabs=0, epsrel=1e-13, limit=200)
        outer, _ = integrate.quad(f, knot, np.inf, epsabs=0, epsrel=1e-13, limit=200)
        return float(area * (inner + outer))

    def _l2(self) -> float:
        n = self.dim
        if self.kind != "mexican_hat":
            return abs(self.amplitude) * (math.pi * self.sigma**2) ** (n / 4)
        # (2pi)^-n S_{n-1} int r^4 M^2 exp(-s^2 r^2) r^{n-1} dr, a Gamma integral
        m2 = self.gauss_mass**2
        integral = 0.5 * math.gamma((n + 4) / 2) * self.sigma ** (-(n + 4))
        return math.sqrt(plancherel_factor(n) * m2 * integral)

    def describe(self) -> str:
        return f"{self.kind}:{self.amplitude:g}:{self.sigma:g}"


def gaussian(amplitude: float = 1.0, sigma: float = 1.0, n: int = 1) -> RadialProfile:
    return RadialProfile("gaussian", float(amplitude), float(sigma), int(n))


def mexican_hat(amplitude: float = 1.0, sigma: float = 1.0, n: int = 1) -> RadialProfile:
    """Laplacian of ``amplitude * exp(-|x|^2 / 2 sigma^2)``; its mass is zero."""
    return RadialProfile("mexican_hat", float(amplitude), float(sigma), int(n))


def scaled_gaussian(mass: float = 1.0, sigma: float = 1.0, n: int = 1) -> RadialProfile:
    """Gaussian normalised to a prescribed mass."""
    if not sigma > 0:
        raise DomainError(f"sigma must be positive, got {sigma}")
    amp = mass / (2.0 * math.pi * sigma**2) ** (n / 2)
    return RadialProfile("scaled_gaussian", float(amp), float(sigma), int(n))


def make_profile(kind: str, amplitude: float, sigma: float, n: int) -> RadialProfile:
    if kind == "scaled_gaussian":
        return scaled_gaussian(amplitude, sigma, n)
    return RadialProfile(kind, float(amplitude), float(sigma), int(n))


def sample_on_grid(profile: RadialProfile, grid):
    """Sample ``profile`` on the lattice of ``grid`` (a gridlab.GridSpec)."""
    from .gridlab import GridField

    if grid.dim != profile.dim:
        raise DomainError(f"profile is {profile.dim}-d but grid is {grid.dim}-d")
    if profile.sigma / grid.spacing < 8:
        raise ResolutionError(
            f"grid spacing {grid.spacing:g} resolves sigma={profile.sigma:g} with fewer than 8 points"
        )
    rho = np.sqrt(sum(x * x for x in grid.mesh()))
    return GridField(grid, profile.physical(rho))
