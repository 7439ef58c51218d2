"""Periodic-box FFT evolution of the damped and free wave equations.

The grid path exists for cross-checks and energy physics at moderate
times; large-time asymptotics go through :mod:`sdwave.quadrature`.
Wave-like supports spread at unit speed, so results for which
``t + support_radius > L`` are flagged as beyond the periodization horizon.
"""
from __future__ import annotations

import math
import struct
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import symbols
from .symbols import DomainError, SymbolParams

SUPPORT_TOL = 1e-12


class StabilityError(ValueError):
    """RK4 step too large for the mode being integrated."""


@dataclass(frozen=True)
class GridSpec:
    dim: int
    points_per_dim: int
    half_width: float

    def __post_init__(self):
        n = self.points_per_dim
        if self.dim not in (1, 2):
            raise DomainError(f"grid dimension must be 1 or 2, got {self.dim}")
        if n < 16 or n & (n - 1):
            raise DomainError(f"points_per_dim must be a power of two >= 16, got {n}")
        if not self.half_width > 0:
            raise DomainError("half_width must be positive")

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_width / self.points_per_dim

    @property
    def shape(self):
        return (self.points_per_dim,) * self.dim

    @property
    def cell_volume(self) -> float:
        return self.spacing**self.dim

    def axis(self):
        return -self.half_width + self.spacing * np.arange(self.points_per_dim)

    def mesh(self):
        return np.meshgrid(*([self.axis()] * self.dim), indexing="ij")

    def wavenumber_magnitude(self):
        """|k| on the FFT dual lattice (spacing pi/L)."""
        k = 2.0 * np.pi * np.fft.fftfreq(self.points_per_dim, d=self.spacing)
        ks = np.meshgrid(*([k] * self.dim), indexing="ij")
        return np.sqrt(sum(kk * kk for kk in ks))


@dataclass(frozen=True, eq=False)
class GridField:
    spec: GridSpec
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != self.spec.shape:
            raise DomainError(f"values have shape {v.shape}, expected {self.spec.shape}")
        if not np.all(np.isfinite(v)):
            raise DomainError("field values must be finite")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @classmethod
    def zeros(cls, spec: GridSpec) -> "GridField":
        return cls(spec, np.zeros(spec.shape))

    def __add__(self, other):
        _same_spec(self, other)
        return GridField(self.spec, self.values + other.values)

    def __sub__(self, other):
        _same_spec(self, other)
        return GridField(self.spec, self.values - other.values)

    def __mul__(self, a: float):
        return GridField(self.spec, a * self.values)

    __rmul__ = __mul__


@dataclass(frozen=True)
class EnergySample:
    t: float
    energy: float
    dissipation: float


class Evolved(NamedTuple):
    u: GridField
    ut: GridField
    within_horizon: bool
    imag_residue: float


class DissipationReport(NamedTuple):
    samples: list
    max_defect: float
    monotone: bool
    within_horizon: bool


def _same_spec(a: GridField, b: GridField):
    if a.spec != b.spec:
        raise DomainError("fields live on different grids")


def support_radius(*fields: GridField) -> float:
    """Largest |x| at which any field exceeds SUPPORT_TOL of its peak."""
    radius = 0.0
    for f in fields:
        v = np.abs(f.values)
        peak = v.max()
        if peak == 0:
            continue
        rho = np.sqrt(sum(x * x for x in f.spec.mesh()))
        radius = max(radius, float(rho[v > SUPPORT_TOL * peak].max()))
    return radius


def within_horizon(t: float, *fields: GridField) -> bool:
    return t + support_radius(*fields) <= fields[0].spec.half_width


def _apply(spec, coeffs_and_hats):
    """Inverse FFT of sum(multiplier * hat); returns real part and imaginary residue."""
    total = sum(m * h for m, h in coeffs_and_hats)
    z = np.fft.ifftn(total)
    re = z.real
    scale = np.sqrt(np.sum(re * re)) or 1.0
    return re, float(np.sqrt(np.sum(z.imag**2)) / scale)


def _evolve(u0, u1, t, mults):
    _same_spec(u0, u1)
    if t < 0:
        raise DomainError("t must be >= 0")
    spec = u0.spec
    h0 = np.fft.fftn(u0.values)
    h1 = np.fft.fftn(u1.values)
    m0, m1, d0, d1 = mults(spec.wavenumber_magnitude())
    u, res_u = _apply(spec, [(m0, h0), (m1, h1)])
    ut, res_ut = _apply(spec, [(d0, h0), (d1, h1)])
    return Evolved(
        GridField(spec, u),
        GridField(spec, ut),
        within_horizon(t, u0, u1),
        max(res_u, res_ut),
    )


def evolve_damped(u0: GridField, u1: GridField, t: float, nu: float) -> Evolved:
    """Solution and velocity of the strongly damped wave equation at time t."""
    p = SymbolParams(nu=nu, dim=u0.spec.dim)

    def mults(r):
        return (
            symbols.k0_hat(t, r, p),
            symbols.k1_hat(t, r, p),
            symbols.dt_k0_hat(t, r, p),
            symbols.dt_k1_hat(t, r, p),
        )

    return _evolve(u0, u1, t, mults)


def evolve_wave(u0: GridField, u1: GridField, t: float) -> Evolved:
    """Free wave: ``cos(t|D|) u0 + W(t) u1`` and its time derivative."""

    def mults(r):
        return (
            np.cos(t * r),
            symbols.omega(t, r),
            -r * np.sin(t * r),
            np.cos(t * r),
        )

    return _evolve(u0, u1, t, mults)


def apply_multiplier(field: GridField, symbol) -> GridField:
    """Apply a radial Fourier multiplier ``symbol(r)`` to a field."""
    r = field.spec.wavenumber_magnitude()
    re, _ = _apply(field.spec, [(symbol(r), np.fft.fftn(field.values))])
    return GridField(field.spec, re)


def _grad_sq(field: GridField) -> float:
    """Sum of |grad u|^2 times the cell volume, computed spectrally."""
    spec = field.spec
    h = np.fft.fftn(field.values)
    r = spec.wavenumber_magnitude()
    npts = field.values.size
    return float(np.sum(r * r * np.abs(h) ** 2) * spec.cell_volume / npts)


def l2_norm(u: GridField) -> float:
    return math.sqrt(float(np.sum(u.values**2)) * u.spec.cell_volume)


def energy(u: GridField, ut: GridField) -> float:
    """Total energy 1/2 (||u_t||^2 + ||grad u||^2)."""
    _same_spec(u, ut)
    kinetic = float(np.sum(ut.values**2)) * u.spec.cell_volume
    return 0.5 * (kinetic + _grad_sq(u))


def dissipation_rate(ut: GridField, nu: float) -> float:
    return nu * _grad_sq(ut)


def dissipation_check(u0: GridField, u1: GridField, nu: float, t_grid, dt_fd: float = 1e-3):
    """Check dE/dt = -nu ||grad u_t||^2 along ``t_grid``.

    The defect at each time is ``|dE/dt + dissipation| / E(0)`` with dE/dt a
    centered difference of step ``dt_fd``.
    """
    e0 = energy(u0, u1)
    norm = e0 if e0 > 0 else 1.0
    samples = []
    defect = 0.0
    inside = True
    for t in t_grid:
        t = float(t)
        if t < dt_fd:
            raise DomainError("times in t_grid must be >= dt_fd")
        now = evolve_damped(u0, u1, t, nu)
        inside = inside and now.within_horizon
        e = energy(now.u, now.ut)
        ep = energy(*evolve_damped(u0, u1, t + dt_fd, nu)[:2])
        em = energy(*evolve_damped(u0, u1, t - dt_fd, nu)[:2])
        diss = dissipation_rate(now.ut, nu)
        samples.append(EnergySample(t, e, diss))
        defect = max(defect, abs((ep - em) / (2 * dt_fd) + diss) / norm)
    energies = [e0] + [s.energy for s in samples]
    slack = 1e-13 * max(e0, 1e-300)
    monotone = all(b <= a + slack for a, b in zip(energies, energies[1:]))
    return DissipationReport(samples, defect, monotone, inside)


def default_rk4_step(r: float, nu: float) -> float:
    return min(0.025 / max(1.0, nu * r * r, r), 2e-3)


def mode_oracle(r: float, nu: float, t: float, u0_hat: float, u1_hat: float, rk4_step: float | None = None):
    """Integrate u'' + nu r^2 u' + r^2 u = 0 with classical RK4.

    Independent of the closed-form symbols; with initial data (1, 0) it
    reproduces K0_hat(t, r) and with (0, 1) it reproduces K1_hat(t, r).
    Returns ``(u, u')`` at time t.
    """
    limit = 0.1 / max(1.0, nu * r * r, r)
    h = default_rk4_step(r, nu) if rk4_step is None else rk4_step
    if h > limit * (1 + 1e-12) or h <= 0:
        raise StabilityError(f"rk4_step {h:g} exceeds stability limit {limit:g}")
    if t < 0:
        raise DomainError("t must be >= 0")
    if r == 0:
        # free particle: RK4 is exact here, so skip the roundoff of stepping
        return float(u0_hat) + t * float(u1_hat), float(u1_hat)
    steps = max(1, math.ceil(t / h)) if t > 0 else 0
    h = t / steps if steps else 0.0
    a = nu * r * r
    b = r * r
    u, v = float(u0_hat), float(u1_hat)
    for _ in range(steps):
        k1u, k1v = v, -a * v - b * u
        u2, v2 = u + 0.5 * h * k1u, v + 0.5 * h * k1v
        k2u, k2v = v2, -a * v2 - b * u2
        u3, v3 = u + 0.5 * h * k2u, v + 0.5 * h * k2v
        k3u, k3v = v3, -a * v3 - b * u3
        u4, v4 = u + h * k3u, v + h * k3v
        k4u, k4v = v4, -a * v4 - b * u4
        u += h / 6.0 * (k1u + 2 * k2u + 2 * k3u + k4u)
        v += h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v)
    return u, v


_HEADER = struct.Struct("<qqd")


def write_field(path, field: GridField):
    """Flat binary dump: little-endian int64 dim, int64 N, float64 L, then row-major float64."""
    spec = field.spec
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(spec.dim, spec.points_per_dim, spec.half_width))
        fh.write(np.ascontiguousarray(field.values, dtype="<f8").tobytes(order="C"))


def read_field(path) -> GridField:
    with open(path, "rb") as fh:
        dim, n, half = _HEADER.unpack(fh.read(_HEADER.size))
        spec = GridSpec(int(dim), int(n), float(half))
        data = np.frombuffer(fh.read(), dtype="<f8").reshape(spec.shape)
    return GridField(spec, data.copy())
