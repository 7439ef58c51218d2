"""Integrand objects consumed by :func:`sdwave.quadrature.engine.integrate`."""
from __future__ import annotations

import math

import numpy as np

from ..symbols import SymbolParams
from .multipliers import envelope_tail, sin2_over_r2_tail

# Gaussian exponent times R^2 at which the first tail check is made
_TAIL_START_EXPONENT = 36.0


def _square_terms(terms):
    """Terms of (Re sum a_k e^{i t phi_k})^2 by the product-to-sum rule."""
    out = []
    for j, (a, c, eta, deta) in enumerate(terms):
        out.append((0.5 * a * a, 2.0 * c, _scale(eta, 2.0), _scale(deta, 2.0)))
        out.append((0.5 * np.abs(a) ** 2, 0.0, None, None))
        for b, cb, etb, detb in terms[j + 1:]:
            out.append((a * b, c + cb, _comb(eta, etb, 1.0), _comb(deta, detb, 1.0)))
            out.append((a * np.conj(b), c - cb, _comb(eta, etb, -1.0), _comb(deta, detb, -1.0)))
    return out


def _scale(x, k):
    return None if x is None else k * x


def _comb(x, y, sign):
    if x is None and y is None:
        return None
    if x is None:
        return sign * y
    if y is None:
        return x
    return x + sign * y


class SquaredSum:
    """``(sum_j M_j(t, r) w_j(r))^2 r^(n-1)`` for multiplier/weight pairs."""

    def __init__(self, pairs, t: float, p: SymbolParams):
        self.pairs = list(pairs)
        self.t = float(t)
        self.p = p
        self.jac = p.dim - 1
        self.exact_d_tail = (
            len(self.pairs) == 1
            and self.pairs[0][0].name == "D"
            and self.pairs[0][1].is_unit
            and p.dim == 1
            and self.t > 0
        )

    def _jacobian(self, r):
        return r**self.jac if self.jac else 1.0

    def value(self, r):
        f = 0.0
        for m, w in self.pairs:
            f = f + m.value(self.t, r, self.p) * w(r)
        return f * f * self._jacobian(r)

    def terms(self, r):
        reps = []
        for m, w in self.pairs:
            wr = w(r)
            for amp, c, eta, deta in m.rep(self.t, r, self.p):
                reps.append((amp * wr, c, eta, deta))
        jac = self._jacobian(r)
        return [(a * jac, c, e, d) for a, c, e, d in _square_terms(reps)]

    def phases(self, r):
        out = []
        for m, _ in self.pairs:
            out.extend(m.phases(self.t, r, self.p))
        return out

    def split_ok(self, a, b):
        ok = np.ones(len(a), dtype=bool)
        for m, _ in self.pairs:
            ok &= m.split_ok(self.t, a, b, self.p)
        return ok

    def scales(self):
        out = []
        for m, w in self.pairs:
            out.extend(m.scales(self.t, self.p))
            out.extend(w.scales())
        return out

    def breakpoints(self):
        pts = []
        if any(m.damped for m, _ in self.pairs):
            pts.append(self.p.degenerate_r)
        if self.t > 0:
            pts += [1.0 / self.t, 1.0 / math.sqrt(self.p.nu * self.t)]
        return pts

    def _decay(self):
        """Smallest Gaussian exponent over the pairs' envelopes."""
        rates = []
        for m, w in self.pairs:
            _, _, a = w.envelope()
            rates.append(min(b for _, _, b in m.envelopes(self.t, self.p)) + a)
        return min(rates)

    def tail_start(self):
        if self.exact_d_tail:
            return math.sqrt(80.0 / (self.p.nu * self.t))
        a = self._decay()
        return math.sqrt(_TAIL_START_EXPONENT / a) if a > 0 else 1.0

    def tail_envelope(self, R):
        """Rigorous bound on int_R^inf of the integrand (Cauchy-Schwarz over pairs)."""
        total = 0.0
        for m, w in self.pairs:
            cw, pw, aw = w.envelope()
            total += cw * cw * envelope_tail(m.envelopes(self.t, self.p), 2 * pw + self.jac, aw, R)
        return len(self.pairs) * total

    def tail(self, R):
        if self.exact_d_tail:
            # (1 - e)^2 = 1 - e (2 - e) and 0 <= e (2 - e) <= 2 e
            bound = 2.0 * math.exp(-0.5 * self.p.nu * self.t * R * R) / R
            return sin2_over_r2_tail(self.t, R), bound
        return 0.0, self.tail_envelope(R)


class GaussDefectLog:
    """``pi F_t(r) cos(c t r)`` with ``F_t = exp(-2 beta r^2) expm1(-nu t r^2)^2 / r``.

    ``c = 0`` gives the non-oscillatory integrand, ``c = 2`` its
    oscillatory companion.
    """

    def __init__(self, t, nu, beta, c):
        self.t = float(t)
        self.nu = nu
        self.beta = beta
        self.c = float(c)

    def _f(self, r):
        return math.pi * np.exp(-2.0 * self.beta * r * r) * np.expm1(-self.nu * self.t * r * r) ** 2 / r

    def value(self, r):
        f = self._f(r)
        return f * np.cos(self.c * self.t * r) if self.c else f

    def terms(self, r):
        return [(self._f(r) + 0j, self.c, None, None)]

    def phases(self, r):
        return [0.5 * self.c * self.t * r]

    def split_ok(self, a, b):
        return a > 0

    def scales(self):
        return [2.0 * self.nu * self.t, 2.0 * self.beta]

    def breakpoints(self):
        return []

    def tail_start(self):
        return 1.0

    def tail(self, R):
        return 0.0, 0.0
