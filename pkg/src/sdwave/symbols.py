"""Fourier-side symbols of the strongly damped and the free wave equation.

Every symbol is a real function of time ``t`` and radial wavenumber
``r = |xi|``.  The damped propagators are evaluated through the
analytic-continuation pair

    c = cosh(t sqrt(s2)),   s = sinh(t sqrt(s2)) / sqrt(s2),

with ``s2 = nu^2 r^4 / 4 - r^2``, so they stay real and accurate on both
sides of the double root at ``r = 2/nu``.

All functions accept scalars or numpy arrays and broadcast their arguments.
Scalar inputs return Python floats.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

#: switch to the Taylor series in sinhc_pair when |t^2 s2| is below this
TAYLOR_EPS = 1e-6
#: above this value of t*sqrt(s2) the overdamped pair is built from exponentials
_EXP_FORM = 20.0


class DomainError(ValueError):
    """Argument outside the domain of a symbol or operation."""


@dataclass(frozen=True)
class SymbolParams:
    """Parameters shared by every symbol evaluation.

    ``nu`` is the viscosity, ``dim`` the space dimension and ``beta`` the
    Gaussian smoothing parameter (only used by the J^(beta) symbols).
    """

    nu: float = 1.0
    dim: int = 1
    beta: float = 1.0

    def __post_init__(self):
        if not (self.nu > 0 and math.isfinite(self.nu)):
            raise DomainError(f"nu must be positive, got {self.nu}")
        if not (self.beta > 0 and math.isfinite(self.beta)):
            raise DomainError(f"beta must be positive, got {self.beta}")
        if self.dim not in (1, 2, 3):
            raise DomainError(f"dim must be 1, 2 or 3, got {self.dim}")

    @property
    def degenerate_r(self) -> float:
        """Wavenumber of the double characteristic root."""
        return 2.0 / self.nu


@dataclass(frozen=True)
class CharRoots:
    lambda_plus: complex
    lambda_minus: complex
    discriminant: float
    degenerate: bool


def _ret(x, scalar):
    if scalar:
        return float(np.asarray(x).reshape(-1)[0])
    return x


def _is_scalar(*args):
    return all(np.ndim(a) == 0 for a in args)


def _check_nonneg(name, x):
    if np.any(np.asarray(x) < 0):
        raise DomainError(f"{name} must be >= 0")
    if np.any(np.isnan(x)):
        raise DomainError(f"{name} must not be NaN")


def char_roots(r: float, p: SymbolParams, threshold: float = 1e-10) -> CharRoots:
    """Roots of ``lam^2 + nu r^2 lam + r^2 = 0``.

    ``degenerate`` is set when the discriminant ``nu^2 r^4/4 - r^2`` is
    within ``threshold * r^2`` of zero.
    """
    if r < 0 or math.isnan(r):
        raise DomainError(f"r must be >= 0, got {r}")
    r = float(r)
    k = 0.5 * p.nu * r * r
    disc = r * r * (0.25 * p.nu * p.nu * r * r - 1.0)
    degenerate = abs(disc) <= threshold * r * r
    if r == 0.0:
        return CharRoots(0j, 0j, 0.0, False)
    if degenerate:
        lp = lm = complex(-k)
    elif disc > 0:
        q = math.sqrt(disc)
        lm = -k - q
        # rationalised so that the small root keeps full relative accuracy
        lp = -r * r / (k + q)
        lp, lm = complex(lp), complex(lm)
    else:
        q = math.sqrt(-disc)
        lp = complex(-k, q)
        lm = complex(-k, -q)
    return CharRoots(lp, lm, disc, degenerate)


def _taylor(z):
    """cosh(sqrt(z)) and sinh(sqrt(z))/sqrt(z) to four terms in z."""
    c = 1.0 + z / 2.0 * (1.0 + z / 12.0 * (1.0 + z / 30.0 * (1.0 + z / 56.0)))
    s = 1.0 + z / 6.0 * (1.0 + z / 20.0 * (1.0 + z / 42.0 * (1.0 + z / 72.0)))
    return c, s


def sinhc_pair(s2, t):
    """Return ``(cosh(t sqrt(s2)), sinh(t sqrt(s2))/sqrt(s2))``.

    Continues analytically to ``(cos(t sqrt(-s2)), sin(t sqrt(-s2))/sqrt(-s2))``
    for negative ``s2``; near ``s2 = 0`` a Taylor series in ``t^2 s2`` is used.
    """
    scalar = _is_scalar(s2, t)
    _check_nonneg("t", t)
    s2, t = np.broadcast_arrays(np.asarray(s2, dtype=float), np.asarray(t, dtype=float))
    z = s2 * t * t
    c = np.empty(z.shape)
    s = np.empty(z.shape)
    small = np.abs(z) < TAYLOR_EPS
    pos = (~small) & (s2 > 0)
    neg = (~small) & (s2 < 0)
    cz, sz = _taylor(z[small])
    c[small] = cz
    s[small] = t[small] * sz
    q = np.sqrt(s2[pos])
    c[pos] = np.cosh(t[pos] * q)
    s[pos] = np.sinh(t[pos] * q) / q
    q = np.sqrt(-s2[neg])
    c[neg] = np.cos(t[neg] * q)
    s[neg] = np.sin(t[neg] * q) / q
    return _ret(c, scalar), _ret(s, scalar)


def _damped_pair(t, r, nu):
    """``exp(-nu t r^2/2) * sinhc_pair(nu^2 r^4/4 - r^2, t)`` without overflow."""
    t, r = np.broadcast_arrays(np.asarray(t, dtype=float), np.asarray(r, dtype=float))
    k = 0.5 * nu * r * r
    s2 = r * r * (0.25 * nu * nu * r * r - 1.0)
    z = s2 * t * t
    c = np.empty(z.shape)
    s = np.empty(z.shape)
    small = np.abs(z) < TAYLOR_EPS
    over = (~small) & (s2 > 0)
    under = (~small) & (s2 < 0)

    e = np.exp(-k[small] * t[small])
    cz, sz = _taylor(z[small])
    c[small] = e * cz
    s[small] = e * t[small] * sz

    tu, ru = t[under], r[under]
    mu = ru * np.sqrt(1.0 - 0.25 * nu * nu * ru * ru)
    e = np.exp(-k[under] * tu)
    c[under] = e * np.cos(tu * mu)
    s[under] = e * np.sin(tu * mu) / mu

    to, ko = t[over], k[over]
    q = np.sqrt(s2[over])
    tq = to * q
    mid = tq <= _EXP_FORM
    e = np.exp(-ko[mid] * to[mid])
    co = np.empty(tq.shape)
    so = np.empty(tq.shape)
    co[mid] = e * np.cosh(tq[mid])
    so[mid] = e * np.sinh(tq[mid]) / q[mid]
    far = ~mid
    ro = r[over][far]
    lp = -ro * ro / (ko[far] + q[far])
    lm = -ko[far] - q[far]
    ep = np.exp(lp * to[far])
    em = np.exp(lm * to[far])
    co[far] = 0.5 * (ep + em)
    so[far] = 0.5 * (ep - em) / q[far]
    c[over] = co
    s[over] = so
    return c, s


def omega(t, r):
    """Free-wave symbol ``sin(t r)/r`` (equal to ``t`` at ``r = 0``)."""
    scalar = _is_scalar(t, r)
    _check_nonneg("t", t)
    _check_nonneg("r", r)
    r = np.asarray(r, dtype=float)
    _, s = sinhc_pair(-r * r, t)
    return _ret(s, scalar)


def k0_hat(t, r, p: SymbolParams):
    scalar = _is_scalar(t, r)
    _check_nonneg("t", t)
    _check_nonneg("r", r)
    r = np.asarray(r, dtype=float)
    c, s = _damped_pair(t, r, p.nu)
    return _ret(c + 0.5 * p.nu * r * r * s, scalar)


def k1_hat(t, r, p: SymbolParams):
    """Fourier symbol of K_1(t); the response to unit initial velocity."""
    scalar = _is_scalar(t, r)
    _check_nonneg("t", t)
    _check_nonneg("r", r)
    _, s = _damped_pair(t, r, p.nu)
    return _ret(s, scalar)


def dt_k0_hat(t, r, p: SymbolParams):
    scalar = _is_scalar(t, r)
    r = np.asarray(r, dtype=float)
    return _ret(-r * r * np.asarray(k1_hat(t, r, p)), scalar)


def dt_k1_hat(t, r, p: SymbolParams):
    scalar = _is_scalar(t, r)
    r = np.asarray(r, dtype=float)
    _check_nonneg("t", t)
    _check_nonneg("r", r)
    c, s = _damped_pair(t, r, p.nu)
    k0 = c + 0.5 * p.nu * r * r * s
    return _ret(k0 - p.nu * r * r * s, scalar)


def _damping(t, r, nu):
    t = np.asarray(t, dtype=float)
    r = np.asarray(r, dtype=float)
    return 0.5 * nu * t * r * r


def g_hat(t, r, p: SymbolParams):
    """Diffusion-wave symbol ``exp(-nu t r^2/2) sin(t r)/r``."""
    scalar = _is_scalar(t, r)
    w = np.asarray(omega(t, r))
    return _ret(np.exp(-_damping(t, r, p.nu)) * w, scalar)


def d_hat(t, r, p: SymbolParams):
    """Symbol of the difference operator D(t) = G(t) - W(t)."""
    scalar = _is_scalar(t, r)
    w = np.asarray(omega(t, r))
    return _ret(np.expm1(-_damping(t, r, p.nu)) * w, scalar)


def j_beta_hat(t, r, p: SymbolParams):
    scalar = _is_scalar(t, r)
    r_ = np.asarray(r, dtype=float)
    return _ret(np.exp(-p.beta * r_ * r_) * np.asarray(d_hat(t, r, p)), scalar)


def dn_rate(n: int, t):
    """Sharp L2 rate d_n(t): sqrt(t), sqrt(log t), t^{-(n-2)/4}."""
    scalar = _is_scalar(t)
    t = np.asarray(t, dtype=float)
    if np.any(t < 2):
        raise DomainError("dn_rate needs t >= 2")
    if n == 1:
        out = np.sqrt(t)
    elif n == 2:
        out = np.sqrt(np.log(t))
    elif n == 3:
        out = t ** (-0.25)
    else:
        raise DomainError(f"dimension {n} not supported")
    return _ret(out, scalar)
