"""Panel quadrature for radial integrals with oscillatory factors.

An integrand object describes ``f(r)`` on ``[lo, hi)`` in two ways:

* ``value(r)``: the integrand itself, used on panels where it completes
  less than about one oscillation (and everywhere in brute mode);
* ``terms(r)``: a list ``(amp, c, eta, deta)`` with
  ``f(r) = Re sum amp(r) exp(i t (c r + eta(r)))`` and smooth amplitudes,
  used on panels where the oscillation is fast.

It also supplies ``phases(r)`` (the phases ``t theta(r)`` of the underlying
multiplier, used to pick the form), ``split_ok(a, b)`` (panels where the
second form is valid), ``scales()``, ``breakpoints()``, ``tail_start()`` and
``tail(R) -> (exact part, rigorous bound)`` for the range beyond ``R``.

For the second form each panel's amplitude (times the nonlinear part of
the phase) is expanded in Legendre polynomials on the Gauss-Legendre nodes
and integrated exactly against the local plane wave with

    int_{-1}^{1} P_l(x) exp(i k x) dx = 2 i^l j_l(k),

so the number of panels does not depend on t.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import spherical_jn

# range of the representation phase t*theta below which value() is
# integrated directly (the squared integrand then oscillates at most twice that)
DIRECT_PHASE_RANGE = 4.0
# largest nonlinear phase remainder tolerated inside one Filon panel
MAX_REMAINDER = 3.0
GEOMETRIC_RATIO = 0.25
REFINE_TOL = 1e-14
MAX_DEPTH = 48
# largest radius the tail search may reach before giving up
MAX_TAIL_RADIUS = 1e4
_CHUNK = 1 << 17


class ConfigurationError(ValueError):
    """Quadrature cannot be set up as requested (e.g. nonconvergent tail)."""


@dataclass(frozen=True)
class QuadratureSpec:
    panel_order: int = 16
    smooth_panel_width: float = 0.05
    tail_cutoff_digits: int = 12
    oscillation_mode: str = "filon"

    def __post_init__(self):
        if self.panel_order < 4:
            raise ConfigurationError("panel_order must be >= 4")
        if not self.smooth_panel_width > 0:
            raise ConfigurationError("smooth_panel_width must be positive")
        if self.oscillation_mode not in ("filon", "brute"):
            raise ConfigurationError(f"unknown oscillation_mode {self.oscillation_mode!r}")


@dataclass(frozen=True)
class IntegralResult:
    value: float
    abs_error: float
    panels: int


@lru_cache(maxsize=8)
def _rule(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    vander = np.polynomial.legendre.legvander(x, order - 1)  # (node, l)
    ell = np.arange(order)
    # Legendre coefficients of the interpolant: c = f @ T
    transform = vander * w[:, None] * (ell + 0.5)[None, :]
    return x, w, transform, ell


def _moments(kappa, ell):
    """2 i^l j_l(kappa) for every panel (rows) and degree l (columns)."""
    k = np.abs(kappa)[:, None]
    j = spherical_jn(ell[None, :], k)
    sign = np.where((kappa[:, None] < 0) & (ell[None, :] % 2 == 1), -1.0, 1.0)
    return 2.0 * (1j ** ell)[None, :] * j * sign


def _coef_tail(coef):
    return np.abs(coef[:, -1]) + np.abs(coef[:, -2])


def _direct(integ, a, b, order):
    x, w, transform, _ = _rule(order)
    m = 0.5 * (a + b)
    hh = 0.5 * (b - a)
    r = m[:, None] + hh[:, None] * x[None, :]
    f = integ.value(r)
    coef = f @ transform
    val = 2.0 * hh * coef[:, 0]
    err = 2.0 * hh * _coef_tail(coef)
    return val, err


def _filon(integ, a, b, order):
    """Filon integration of every term; returns value, error, and a refine flag."""
    x, w, transform, ell = _rule(order)
    m = 0.5 * (a + b)
    hh = 0.5 * (b - a)
    r = np.concatenate([m[:, None] + hh[:, None] * x[None, :], m[:, None]], axis=1)
    t = integ.t
    val = np.zeros(len(a))
    err = np.zeros(len(a))
    bad = np.zeros(len(a), dtype=bool)
    smooth = np.zeros((len(a), order), dtype=complex)
    for amp, c, eta, deta in integ.terms(r):
        amp = np.broadcast_to(amp, r.shape)
        if c == 0 and eta is None:
            smooth = smooth + amp[:, :order]
            continue
        if eta is None:
            omega = np.full(len(a), t * c)
            phase0 = t * c * m
            h = amp[:, :order]
        else:
            eta_m = eta[:, order]
            slope = c + deta[:, order]
            omega = t * slope
            phase0 = t * (c * m + eta_m)
            rho = t * (eta[:, :order] - eta_m[:, None] - deta[:, order][:, None] * (r[:, :order] - m[:, None]))
            # an underflowed amplitude carries no phase information
            live = np.max(np.abs(amp[:, :order]), axis=1) > 0
            bad |= live & (np.max(np.abs(rho), axis=1) > MAX_REMAINDER)
            h = amp[:, :order] * np.exp(1j * rho)
        coef = h @ transform
        mom = _moments(omega * hh, ell)
        val += hh * np.real(np.exp(1j * phase0) * np.sum(coef * mom, axis=1))
        err += 2.0 * hh * _coef_tail(coef)
    coef = smooth @ transform
    val += 2.0 * hh * np.real(coef[:, 0])
    err += 2.0 * hh * _coef_tail(coef)
    return val, err, bad


def _phase_range(integ, a, b, order):
    x = _rule(order)[0]
    m = 0.5 * (a + b)
    hh = 0.5 * (b - a)
    nodes = np.concatenate([a[:, None], m[:, None] + hh[:, None] * x[None, :], b[:, None]], axis=1)
    rng = np.zeros(len(a))
    for th in integ.phases(nodes):
        th = np.broadcast_to(th, nodes.shape)
        rng = np.maximum(rng, th.max(axis=1) - th.min(axis=1))
    return rng


def _evaluate_filon(integ, a, b, order):
    """Evaluate panels, bisecting wherever neither form is trustworthy."""
    out_a, out_b, out_v, out_e = [], [], [], []
    depth = 0
    while len(a):
        rng = _phase_range(integ, a, b, order)
        direct = rng <= DIRECT_PHASE_RANGE
        split = ~direct & integ.split_ok(a, b)
        refine = ~direct & ~split
        if depth >= MAX_DEPTH:
            direct = direct | refine
            refine[:] = False
        if direct.any():
            v, e = _direct(integ, a[direct], b[direct], order)
            out_a.append(a[direct]); out_b.append(b[direct]); out_v.append(v); out_e.append(e)
        if split.any():
            sa, sb = a[split], b[split]
            v, e, bad = _filon(integ, sa, sb, order)
            if depth >= MAX_DEPTH:
                bad[:] = False
            ok = ~bad
            out_a.append(sa[ok]); out_b.append(sb[ok]); out_v.append(v[ok]); out_e.append(e[ok])
            refine_a = np.concatenate([a[refine], sa[bad]])
            refine_b = np.concatenate([b[refine], sb[bad]])
        else:
            refine_a, refine_b = a[refine], b[refine]
        mid = 0.5 * (refine_a + refine_b)
        a = np.concatenate([refine_a, mid])
        b = np.concatenate([mid, refine_b])
        depth += 1
    cat = np.concatenate
    return cat(out_a), cat(out_b), cat(out_v), cat(out_e)


def _refine(integ, a, b, v, e, order, evaluate):
    """Bisect panels whose coefficient-tail estimate is large against the total."""
    for _ in range(12):
        total = math.fsum(np.abs(v))
        flag = e > REFINE_TOL * total
        flag &= (b - a) > 1e-14 * np.maximum(np.abs(a), np.abs(b))
        if not flag.any() or total == 0:
            break
        fa, fb = a[flag], b[flag]
        mid = 0.5 * (fa + fb)
        na, nb, nv, ne = evaluate(integ, np.concatenate([fa, mid]), np.concatenate([mid, fb]), order)
        keep = ~flag
        a = np.concatenate([a[keep], na])
        b = np.concatenate([b[keep], nb])
        v = np.concatenate([v[keep], nv])
        e = np.concatenate([e[keep], ne])
    return a, b, v, e


def _evaluate_brute(integ, a, b, order):
    """Uniform sub-panels of width pi/(4t) on top of the base layout."""
    t = integ.t
    if t > 0:
        width = math.pi / (4.0 * t)
        counts = np.maximum(1, np.ceil((b - a) / width)).astype(np.int64)
    else:
        counts = np.ones(len(a), dtype=np.int64)
    vals, errs, aa, bb = [], [], [], []
    # expand lazily, chunk by chunk, to bound memory at large t
    start = 0
    while start < len(a):
        stop = start
        acc = 0
        while stop < len(a) and (acc == 0 or acc + counts[stop] <= _CHUNK):
            acc += counts[stop]
            stop += 1
        seg_a = np.repeat(a[start:stop], counts[start:stop])
        seg_h = np.repeat((b[start:stop] - a[start:stop]) / counts[start:stop], counts[start:stop])
        offs = np.arange(acc) - np.repeat(np.cumsum(counts[start:stop]) - counts[start:stop], counts[start:stop])
        pa = seg_a + offs * seg_h
        pb = pa + seg_h
        v, e = _direct(integ, pa, pb, order)
        vals.append(np.array([math.fsum(v)]))
        errs.append(np.array([float(np.sum(e))]))
        aa.append(pa[:1]); bb.append(pb[-1:])
        start = stop
    cat = np.concatenate
    return cat(aa), cat(bb), cat(vals), cat(errs), int(counts.sum())


def panel_breaks(integ, lo, hi, spec: QuadratureSpec):
    """Base panel layout: geometric grading, width caps from Gaussian scales."""
    t = integ.t
    scales = [s for s in integ.scales() if s > 0]
    first = spec.smooth_panel_width
    if t > 0:
        first = min(first, 1.0 / t)
    for s in scales:
        first = min(first, 1.0 / math.sqrt(s))
    first *= GEOMETRIC_RATIO
    stops = sorted(p for p in integ.breakpoints() if lo < p < hi)
    stops.append(hi)
    breaks = [lo]
    r = lo
    for stop in stops:
        while r < stop:
            h = GEOMETRIC_RATIO * r if r > 0 else first
            h = min(h, spec.smooth_panel_width)
            for s in scales:
                if s * r * r < 50.0 and r > 0:
                    h = min(h, 1.0 / (s * r))
            nxt = r + h
            if nxt >= stop or (stop - nxt) < 0.1 * h:
                nxt = stop
            breaks.append(nxt)
            r = nxt
    return np.asarray(breaks)


def integrate(integ, lo: float, hi: float | None, spec: QuadratureSpec) -> IntegralResult:
    """Integrate ``integ`` over ``[lo, hi]``; ``hi=None`` means to infinity.

    For an infinite range the layout is extended until the rigorous tail
    bound falls below ``10**-tail_cutoff_digits`` of the accumulated value.
    """
    order = spec.panel_order
    brute = spec.oscillation_mode == "brute"
    tol = 10.0 ** (-spec.tail_cutoff_digits)
    segments = []
    if hi is not None:
        segments.append((lo, hi))
        upper = hi
    else:
        upper = max(integ.tail_start(), 2.0 * lo, lo + spec.smooth_panel_width)
        segments.append((lo, upper))

    parts_v, parts_e, panels = [], [], 0
    exact_tail, tail_err = 0.0, 0.0
    while True:
        s_lo, s_hi = segments[-1]
        br = panel_breaks(integ, s_lo, s_hi, spec)
        a, b = br[:-1], br[1:]
        if brute:
            _, _, v, e, count = _evaluate_brute(integ, a, b, order)
        else:
            a, b, v, e = _evaluate_filon(integ, a, b, order)
            a, b, v, e = _refine(integ, a, b, v, e, order, _evaluate_filon)
            count = len(a)
        parts_v.append(v)
        parts_e.append(e)
        panels += count
        if hi is not None:
            break
        total = math.fsum(np.concatenate(parts_v))
        exact_tail, tail_err = integ.tail(upper)
        if not math.isfinite(tail_err):
            raise ConfigurationError("tail bound is not finite; no admissible envelope")
        if tail_err <= tol * abs(total + exact_tail) or tail_err == 0.0:
            break
        if upper > MAX_TAIL_RADIUS:
            raise ConfigurationError(f"tail bound still {tail_err:.3g} at r = {upper:g}")
        segments.append((upper, 2.0 * upper))
        upper *= 2.0
    v = np.concatenate(parts_v)
    e = np.concatenate(parts_e)
    value = math.fsum(v) + exact_tail
    roundoff = 64.0 * np.finfo(float).eps * math.fsum(np.abs(v))
    return IntegralResult(value, float(np.sum(e)) + tail_err + roundoff, panels)
