"""L2 norms of radial Fourier-multiplier evolutions via Plancherel.

``plancherel_norm`` returns ``||M(t) g||_2`` for the multipliers in
:data:`MULTIPLIER_IDS`; the oscillation ``sin(t r)^2`` is integrated
exactly panel by panel, so the cost does not grow with ``t``.  Setting
``QuadratureSpec(oscillation_mode="brute")`` switches to plain paneling at
width ``pi/(4t)``, which is the slow independent check.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from ..profiles import RadialProfile, plancherel_factor
from ..symbols import DomainError, SymbolParams
from .engine import ConfigurationError, IntegralResult, QuadratureSpec, integrate
from .integrands import GaussDefectLog, SquaredSum
from .multipliers import (
    MULTIPLIER_IDS,
    MassDefectWeight,
    PowerWeight,
    ProfileWeight,
    Weight,
    as_weight,
    get_multiplier,
)

__all__ = [
    "MULTIPLIER_IDS",
    "ConfigurationError",
    "MassDefectWeight",
    "NormResult",
    "PowerWeight",
    "ProfileWeight",
    "QuadratureSpec",
    "a_split_2d",
    "gradient_jbeta_norm",
    "i_split_1d",
    "plancherel_norm",
    "radial_integral",
    "radial_norm",
    "tail_bound",
]

DEFAULT_SPEC = QuadratureSpec()


@dataclass(frozen=True)
class NormResult:
    value: float
    abs_error_estimate: float
    panels_used: int


def _check_t(t):
    if not (t >= 0 and math.isfinite(t)):
        raise DomainError(f"t must be finite and >= 0, got {t}")


def _pairs(pairs):
    out = []
    for mult, weight in pairs:
        m = get_multiplier(mult) if isinstance(mult, str) else mult
        out.append((m, as_weight(weight)))
    return out


def _admissible(m, w: Weight, n: int):
    if isinstance(w, PowerWeight):
        # the symbol itself has to be square integrable against r^(2k + n - 1)
        if m.name == "Jbeta":
            return
        if m.name == "D" and n == 1 and w.power == 0:
            return
        raise DomainError(f"weight {w!r} is not admissible for {m.name} in dimension {n}")
    if isinstance(w, (ProfileWeight, MassDefectWeight)) and w.profile.dim != n:
        raise DomainError(f"profile is {w.profile.dim}-d but the norm is taken in {n}-d")


def radial_integral(pairs, t: float, p: SymbolParams, spec: QuadratureSpec = DEFAULT_SPEC) -> IntegralResult:
    """Raw ``int_0^inf (sum_j M_j w_j)^2 r^(n-1) dr`` (no Plancherel factor)."""
    _check_t(t)
    prs = _pairs(pairs)
    for m, w in prs:
        _admissible(m, w, p.dim)
    return integrate(SquaredSum(prs, t, p), 0.0, None, spec)


def _to_norm(res: IntegralResult, n: int) -> NormResult:
    fac = plancherel_factor(n)
    sq = max(res.value, 0.0) * fac
    err = res.abs_error * fac
    value = math.sqrt(sq)
    if value > 0:
        norm_err = min(err / (2.0 * value), math.sqrt(err))
    else:
        norm_err = math.sqrt(err)
    return NormResult(value, float(norm_err), res.panels)


def radial_norm(pairs, t: float, p: SymbolParams, spec: QuadratureSpec = DEFAULT_SPEC) -> NormResult:
    """``|| sum_j M_j(t) w_j ||_2`` for (multiplier id, weight) pairs."""
    return _to_norm(radial_integral(pairs, t, p, spec), p.dim)


def plancherel_norm(multiplier_id: str, t: float, p: SymbolParams, weight="unit",
                    spec: QuadratureSpec = DEFAULT_SPEC) -> NormResult:
    """``||M(t) g||_2`` where ``weight`` is g's profile (or "unit" for the kernel itself)."""
    return radial_norm([(multiplier_id, weight)], t, p, spec)


def gradient_jbeta_norm(t: float, p: SymbolParams, spec: QuadratureSpec = DEFAULT_SPEC) -> NormResult:
    if p.dim != 2:
        raise DomainError("gradient_jbeta_norm is defined for n = 2")
    return radial_norm([("Jbeta", PowerWeight(1))], t, p, spec)


def i_split_1d(t: float, nu: float, spec: QuadratureSpec = DEFAULT_SPEC):
    """Squared norm of D(t) in 1-d split at r = t^(-1/2): returns (I1, I2)."""
    if not t > 0:
        raise DomainError(f"i_split_1d needs t > 0, got {t}")
    p = SymbolParams(nu=nu, dim=1)
    integ = SquaredSum(_pairs([("D", "unit")]), t, p)
    cut = 1.0 / math.sqrt(t)
    fac = plancherel_factor(1)
    low = integrate(integ, 0.0, cut, spec)
    high = integrate(integ, cut, None, spec)
    return fac * max(low.value, 0.0), fac * max(high.value, 0.0)


def a_split_2d(t: float, nu: float, beta: float, spec: QuadratureSpec = DEFAULT_SPEC):
    """Non-oscillatory and cos(2tr) parts of the 2-d lower-bound integral over t^(-1/2) <= r <= 1."""
    if not t >= 4:
        raise DomainError(f"a_split_2d needs t >= 4, got {t}")
    SymbolParams(nu=nu, beta=beta)  # validates nu and beta
    lo = 1.0 / math.sqrt(t)
    a1 = integrate(GaussDefectLog(t, nu, beta, 0.0), lo, 1.0, spec)
    a2 = integrate(GaussDefectLog(t, nu, beta, 2.0), lo, 1.0, spec)
    return a1.value, a2.value


def tail_bound(multiplier_id: str, weight, n: int, r_start: float, t: float = 1.0,
               p: SymbolParams | None = None) -> float:
    """Rigorous bound on ``int_{r_start}^inf M^2 w^2 r^(n-1) dr``."""
    if p is None:
        p = SymbolParams(dim=n)
    elif p.dim != n:
        p = SymbolParams(nu=p.nu, dim=n, beta=p.beta)
    prs = _pairs([(multiplier_id, weight)])
    _admissible(prs[0][0], prs[0][1], n)
    bound = SquaredSum(prs, t, p).tail_envelope(r_start)
    if not math.isfinite(bound):
        raise ConfigurationError(f"no admissible envelope for {multiplier_id} from r = {r_start}")
    return bound


def profile_weight(profile: RadialProfile) -> ProfileWeight:
    return ProfileWeight(profile)
