"""Multipliers M(t, r) in value form and in oscillatory-representation form.

``rep`` returns terms ``(amp, c, eta, deta)`` with
``M = Re sum amp * exp(i t (c r + eta))``.  The amplitudes are smooth away
from ``r = 0`` (and, for the damped propagators, away from the double
root ``r = 2/nu``), which is where ``split_ok`` forbids their use.

Writing ``e = exp(-nu t r^2/2)``, ``mu = r sqrt(1 - nu^2 r^2/4)``,
``delta = r - mu``, ``k = nu r^2/2``:

    W          = Re[-i/r e^{itr}]
    G          = Re[-i e/r e^{itr}]
    D          = Re[-i (e-1)/r e^{itr}]
    Jbeta      = Re[-i e^{-beta r^2} (e-1)/r e^{itr}]
    K1         = Re[-i e/mu e^{it mu}]                       (r < 2/nu)
    K0         = Re[e (1 - i k/mu) e^{it mu}]                (r < 2/nu)
    K1 - G     = e [P sin(t mu) + Q cos(t s)]                (r < 2/nu)

with ``P = delta/(r mu)``, ``Q = -2 sin(t delta/2)/r`` and ``s = r - delta/2``;
the last form has no cancellation between O(t) pieces.  Above ``2/nu``
the damped propagators are non-oscillatory and enter with phase zero.
"""
from __future__ import annotations

import math

import numpy as np

from .. import symbols

MULTIPLIER_IDS = ("K0", "K1", "G", "W", "D", "Jbeta", "K1_minus_G")


def _under(r, p):
    """mu, delta and delta' on the underdamped side (zeros elsewhere)."""
    rd = p.degenerate_r
    inside = r < rd
    rr = np.where(inside, r, 0.0)
    x = 0.25 * p.nu * p.nu * rr * rr
    root = np.sqrt(1.0 - x)
    mu = rr * root
    delta = rr * x / (1.0 + root)
    with np.errstate(divide="ignore", invalid="ignore"):
        dmu = np.where(inside, (1.0 - 2.0 * x) / root, 0.0)
    return inside, mu, delta, 1.0 - dmu


class Multiplier:
    name = ""
    damped = False
    t_bound = 1.0  # |M| <= t_bound * t
    r_bound = 1.0  # |M| <= r_bound / r
    beta_decay = False

    def value(self, t, r, p):
        raise NotImplementedError

    def rep(self, t, r, p):
        raise NotImplementedError

    def phases(self, t, r, p):
        return [t * r]

    def split_ok(self, t, a, b, p):
        return t * a >= 1.0

    def scales(self, t, p):
        """Gaussian exponents whose length scales the panels must resolve."""
        return [p.nu * t]

    def envelopes(self, t, p):
        """Options (C2, q, b) with M^2 <= C2 r^q exp(-b r^2) for every r > 0."""
        b = 2.0 * p.beta if self.beta_decay else 0.0
        return [((self.t_bound * t) ** 2, 0, b), (self.r_bound**2, -2, b)]


class _W(Multiplier):
    name = "W"

    def value(self, t, r, p):
        return symbols.omega(t, r)

    def rep(self, t, r, p):
        return [(-1j / r, 1.0, None, None)]

    def scales(self, t, p):
        return []


class _G(Multiplier):
    name = "G"

    def value(self, t, r, p):
        return symbols.g_hat(t, r, p)

    def rep(self, t, r, p):
        return [(-1j * np.exp(-0.5 * p.nu * t * r * r) / r, 1.0, None, None)]


class _D(Multiplier):
    name = "D"

    def value(self, t, r, p):
        return symbols.d_hat(t, r, p)

    def rep(self, t, r, p):
        return [(-1j * np.expm1(-0.5 * p.nu * t * r * r) / r, 1.0, None, None)]


class _J(Multiplier):
    name = "Jbeta"
    beta_decay = True

    def value(self, t, r, p):
        return symbols.j_beta_hat(t, r, p)

    def rep(self, t, r, p):
        amp = np.exp(-p.beta * r * r) * np.expm1(-0.5 * p.nu * t * r * r) / r
        return [(-1j * amp, 1.0, None, None)]

    def scales(self, t, p):
        return [p.nu * t, 2.0 * p.beta]


class _Damped(Multiplier):
    damped = True

    def phases(self, t, r, p):
        inside, mu, _, _ = _under(r, p)
        return [np.where(inside, t * mu, 0.0)]

    def split_ok(self, t, a, b, p):
        rd = p.degenerate_r
        _, mu_a, _, _ = _under(a, p)
        _, mu_b, _, _ = _under(b, p)
        under = (b <= rd) & (t * np.minimum(mu_a, mu_b) >= 1.0)
        return under | (a >= rd)


class _K1(_Damped):
    name = "K1"

    def value(self, t, r, p):
        return symbols.k1_hat(t, r, p)

    def rep(self, t, r, p):
        inside, mu, delta, ddelta = _under(r, p)
        e = np.exp(-0.5 * p.nu * t * r * r)
        with np.errstate(divide="ignore", invalid="ignore"):
            amp = np.where(inside, -1j * e / mu, 0.0)
        over = np.where(inside, 0.0, symbols.k1_hat(t, r, p))
        return [(amp, 1.0, -delta, -ddelta), (over, 0.0, None, None)]


class _K0(_Damped):
    name = "K0"

    def value(self, t, r, p):
        return symbols.k0_hat(t, r, p)

    def rep(self, t, r, p):
        inside, mu, delta, ddelta = _under(r, p)
        e = np.exp(-0.5 * p.nu * t * r * r)
        k = 0.5 * p.nu * r * r
        with np.errstate(divide="ignore", invalid="ignore"):
            amp = np.where(inside, e * (1.0 - 1j * k / mu), 0.0)
        over = np.where(inside, 0.0, symbols.k0_hat(t, r, p))
        return [(amp, 1.0, -delta, -ddelta), (over, 0.0, None, None)]

    def envelopes(self, t, p):
        # mode energy u'^2 + r^2 u^2 is nonincreasing, so |K0_hat| <= 1
        return [(1.0, 0, 0.0)]


class _K1mG(_Damped):
    name = "K1_minus_G"
    t_bound = 2.0
    r_bound = 2.0

    def value(self, t, r, p):
        return symbols.k1_hat(t, r, p) - symbols.g_hat(t, r, p)

    def phases(self, t, r, p):
        inside, mu, delta, _ = _under(r, p)
        return [np.where(inside, t * mu, 0.0), t * (r - 0.5 * delta)]

    def split_ok(self, t, a, b, p):
        return super().split_ok(t, a, b, p) & (t * a >= 1.0)

    def rep(self, t, r, p):
        inside, mu, delta, ddelta = _under(r, p)
        e = np.exp(-0.5 * p.nu * t * r * r)
        with np.errstate(divide="ignore", invalid="ignore"):
            big_p = np.where(inside, delta / (r * mu), 0.0)
        q = -2.0 * np.sin(0.5 * t * delta) / r
        under_g = np.where(inside, e * q, 0.0)
        # above 2/nu: K1_hat (no phase) minus G = Re[i e/r e^{itr}]
        over_k = np.where(inside, 0.0, symbols.k1_hat(t, r, p))
        over_g = np.where(inside, 0.0, 1j * e / r)
        return [
            (-1j * e * big_p, 1.0, -delta, -ddelta),
            (under_g + over_g, 1.0, -0.5 * delta, -0.5 * ddelta),
            (over_k, 0.0, None, None),
        ]


_REGISTRY = {m.name: m for m in (_K0(), _K1(), _G(), _W(), _D(), _J(), _K1mG())}


def get_multiplier(name: str) -> Multiplier:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise ValueError(f"unknown multiplier {name!r}; expected one of {MULTIPLIER_IDS}") from None


# ---------------------------------------------------------------- weights


class Weight:
    """Real radial weight w(r) with envelope |w| <= C r^p exp(-a r^2 / 2)."""

    def __call__(self, r):
        raise NotImplementedError

    def envelope(self):
        raise NotImplementedError

    def scales(self):
        return []

    is_unit = False


class PowerWeight(Weight):
    def __init__(self, power: int = 0):
        self.power = power
        self.is_unit = power == 0

    def __call__(self, r):
        return r**self.power if self.power else np.ones_like(r)

    def envelope(self):
        return (1.0, self.power, 0.0)

    def __repr__(self):
        return "unit" if self.power == 0 else f"r^{self.power}"


class ProfileWeight(Weight):
    def __init__(self, profile):
        self.profile = profile

    def __call__(self, r):
        return self.profile.fourier_side(r)

    def envelope(self):
        pr = self.profile
        return (abs(pr.gauss_mass), pr.poly_power, pr.gauss_exponent)

    def scales(self):
        return [self.profile.gauss_exponent]

    def __repr__(self):
        return self.profile.describe()


class MassDefectWeight(Weight):
    """g_hat(r) - m_g, the symbol of g - m_g * delta."""

    def __init__(self, profile):
        self.profile = profile

    def __call__(self, r):
        return self.profile.fourier_defect(r)

    def envelope(self):
        pr = self.profile
        if pr.kind == "mexican_hat":
            return (abs(pr.gauss_mass), pr.poly_power, pr.gauss_exponent)
        return (abs(pr.gauss_mass), 0, 0.0)

    def scales(self):
        return [self.profile.gauss_exponent]

    def __repr__(self):
        return f"defect({self.profile.describe()})"


def as_weight(weight) -> Weight:
    from ..profiles import RadialProfile

    if weight is None or (isinstance(weight, str) and weight == "unit"):
        return PowerWeight(0)
    if isinstance(weight, Weight):
        return weight
    if isinstance(weight, RadialProfile):
        return ProfileWeight(weight)
    raise TypeError(f"cannot use {weight!r} as a radial weight")


# ---------------------------------------------------------------- tails


def gauss_moment_tail(k: float, a: float, R: float) -> float:
    """Upper bound for int_R^inf r^k exp(-a r^2) dr (exact when k > -1)."""
    return gauss_moment_segment(k, a, R, math.inf)


def gauss_moment_segment(k: float, a: float, lo: float, hi: float) -> float:
    """Upper bound for int_lo^hi r^k exp(-a r^2) dr (exact when k > -1 or a = 0)."""
    from scipy.special import erfc, gammainc, gammaincc, gamma

    if hi <= lo:
        return 0.0
    if a <= 0:
        if k == -1:
            return math.log(hi / lo) if lo > 0 else math.inf
        if k < -1:
            if lo <= 0:
                return math.inf
            upper = 0.0 if math.isinf(hi) else hi ** (k + 1)
            return (lo ** (k + 1) - upper) / (-k - 1)
        return math.inf if math.isinf(hi) else (hi ** (k + 1) - lo ** (k + 1)) / (k + 1)
    if k > -1:
        s = 0.5 * (k + 1)
        scale = 0.5 * a ** (-s) * gamma(s)
        if math.isinf(hi):
            return scale * gammaincc(s, a * lo * lo)
        return scale * (gammainc(s, a * hi * hi) - gammainc(s, a * lo * lo))
    if lo <= 0:
        return math.inf
    # r^k <= lo^k on the segment, or drop the Gaussian
    tail_hi = 0.0 if math.isinf(hi) else erfc(math.sqrt(a) * hi)
    gauss = lo**k * 0.5 * math.sqrt(math.pi / a) * (erfc(math.sqrt(a) * lo) - tail_hi)
    return min(gauss, gauss_moment_segment(k, 0.0, lo, hi))


def envelope_tail(options, k_extra: float, a_extra: float, R: float) -> float:
    """Bound int_R^inf M^2 w^2 r^(n-1) dr from envelope options.

    ``options`` are ``(C2, q, b)`` with ``M^2 <= C2 r^q exp(-b r^2)``;
    ``k_extra`` and ``a_extra`` carry the weight and Jacobian powers.
    With two options the range is split at their crossing point.
    """
    def piece(opt, lo, hi):
        c2, q, b = opt
        if c2 == 0:
            return 0.0
        return c2 * gauss_moment_segment(q + k_extra, b + a_extra, lo, hi)

    best = min(piece(o, R, math.inf) for o in options)
    if len(options) == 2:
        (c1, q1, _), (c2, q2, _) = options
        if c1 > 0 and c2 > 0 and q1 != q2:
            cross = (c1 / c2) ** (1.0 / (q2 - q1))
            if cross > R:
                lo_opt, hi_opt = (options[0], options[1]) if q1 > q2 else (options[1], options[0])
                best = min(best, piece(lo_opt, R, cross) + piece(hi_opt, cross, math.inf))
    return best


def sin2_over_r2_tail(t: float, R: float) -> float:
    """Exact int_R^inf sin^2(t r) / r^2 dr."""
    from scipy.special import exp1

    x = 2.0 * t * R
    if x < 40.0:
        z = -1j * x
        e2 = np.exp(-z) - z * exp1(z)
    else:
        # asymptotic series of E_2(-ix); terms decrease while k + 2 < x
        ix = 1j * x
        total, term = 0.0 + 0.0j, 1.0 + 0.0j
        for k in range(60):
            total += term
            term = term * (k + 2) / ix
            if abs(term) < 1e-18:
                break
        e2 = -np.exp(ix) / ix * total
    return 0.5 / R - 0.5 * float(np.real(e2)) / R
