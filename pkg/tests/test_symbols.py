import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sdwave.gridlab import mode_oracle
from sdwave.symbols import (
    DomainError,
    SymbolParams,
    char_roots,
    d_hat,
    dn_rate,
    dt_k0_hat,
    dt_k1_hat,
    g_hat,
    j_beta_hat,
    k0_hat,
    k1_hat,
    omega,
    sinhc_pair,
)

NUS = (0.5, 1.0, 2.0)


def test_params_validation():
    for bad in (dict(nu=0), dict(nu=-1), dict(beta=0), dict(dim=4)):
        with pytest.raises(DomainError):
            SymbolParams(**bad)
    assert SymbolParams(nu=2).degenerate_r == 1.0


def test_char_roots_examples():
    z = char_roots(0.0, SymbolParams(nu=1))
    assert z.lambda_plus == 0 and z.lambda_minus == 0
    d = char_roots(1.0, SymbolParams(nu=2))
    assert d.degenerate
    assert d.lambda_plus == pytest.approx(-1, abs=1e-14)
    assert d.lambda_minus == pytest.approx(-1, abs=1e-14)
    # oracle: numpy's companion-matrix root finder on l^2 + l + 1
    expected = sorted(np.roots([1.0, 1.0, 1.0]), key=lambda z: z.imag)
    z = char_roots(1.0, SymbolParams(nu=1))
    got = sorted([z.lambda_plus, z.lambda_minus], key=lambda z: z.imag)
    for a, b in zip(got, expected):
        assert abs(a - b) < 1e-14
    assert not z.degenerate
    with pytest.raises(DomainError):
        char_roots(-1.0, SymbolParams())


@pytest.mark.parametrize("nu", NUS)
def test_root_relations(nu):
    p = SymbolParams(nu=nu)
    for r in np.concatenate([[0.0], np.logspace(-4, 3, 71)]):
        z = char_roots(float(r), p)
        s, q = -nu * r * r, r * r
        assert abs(z.lambda_plus + z.lambda_minus - s) <= 1e-12 * max(abs(s), 1e-300)
        assert abs(z.lambda_plus * z.lambda_minus - q) <= 1e-12 * max(q, 1e-300)
        assert z.lambda_plus.real <= 0 and z.lambda_minus.real <= 0


def test_sinhc_examples():
    assert sinhc_pair(0.0, 5.0) == (1.0, 5.0)
    c, s = sinhc_pair(-1.0, math.pi)
    assert c == pytest.approx(-1, abs=1e-15) and s == pytest.approx(0, abs=1e-15)
    c, s = sinhc_pair(1.0, 1.0)
    assert c == pytest.approx(math.cosh(1), rel=1e-15) and s == pytest.approx(math.sinh(1), rel=1e-15)
    assert (c, s) == pytest.approx((1.5430806, 1.1752012), abs=1e-7)
    with pytest.raises(DomainError):
        sinhc_pair(1.0, -1.0)


@pytest.mark.parametrize("t", [0.1, 1.0, 7.0, 100.0])
def test_sinhc_continuous_across_zero(t):
    eps = 1e-6 / t**2
    for x in (eps * (1 - 1e-9), eps * (1 + 1e-9)):
        for sign in (1, -1):
            c0, s0 = sinhc_pair(sign * x * (1 - 1e-12), t)
            c1, s1 = sinhc_pair(sign * x * (1 + 1e-12), t)
            assert abs(c0 - c1) <= 1e-12 * abs(c0)
            assert abs(s0 - s1) <= 1e-12 * abs(s0)


@given(st.floats(-50, 50), st.floats(0.01, 10))
def test_sinhc_matches_closed_form(s2, t):
    c, s = sinhc_pair(s2, t)
    if s2 > 1e-3:
        q = math.sqrt(s2)
        assert c == pytest.approx(math.cosh(t * q), rel=1e-12)
        assert s == pytest.approx(math.sinh(t * q) / q, rel=1e-12)
    elif s2 < -1e-3:
        q = math.sqrt(-s2)
        assert c == pytest.approx(math.cos(t * q), abs=1e-12)
        assert s == pytest.approx(math.sin(t * q) / q, abs=1e-12 * t)


def test_omega_examples():
    assert omega(7.0, 0.0) == 7.0
    assert omega(math.pi, 1.0) == pytest.approx(0, abs=1e-15)
    assert omega(1.0, 1.0) == pytest.approx(math.sin(1.0), rel=1e-15)
    assert omega(1.0, 1.0) == pytest.approx(0.8414710, abs=1e-7)


def test_k_hat_examples():
    p = SymbolParams(nu=1)
    assert k0_hat(0.0, 3.0, p) == 1.0 and k1_hat(0.0, 3.0, p) == 0.0
    for nu in NUS:
        q = SymbolParams(nu=nu)
        assert k0_hat(2.0, 0.0, q) == 1.0 and k1_hat(2.0, 0.0, q) == 2.0
    u, v = mode_oracle(1.0, 1.0, 1.0, 1.0, 0.0)
    assert k0_hat(1.0, 1.0, p) == pytest.approx(u, rel=1e-8)
    u, v = mode_oracle(1.0, 1.0, 1.0, 0.0, 1.0)
    assert k1_hat(1.0, 1.0, p) == pytest.approx(u, rel=1e-8)


def test_vectorised_matches_scalar():
    p = SymbolParams(nu=0.7)
    r = np.linspace(0, 10, 101)
    for f in (k0_hat, k1_hat, dt_k0_hat, dt_k1_hat, g_hat, d_hat, j_beta_hat):
        vec = f(3.0, r, p)
        assert vec.shape == r.shape
        assert np.array_equal(vec, [f(3.0, float(x), p) for x in r])
    assert isinstance(k0_hat(1.0, 1.0, p), float)


def test_dt_examples():
    p = SymbolParams(nu=1)
    assert dt_k0_hat(0.0, 2.0, p) == 0.0 and dt_k1_hat(0.0, 2.0, p) == 1.0
    assert dt_k0_hat(3.0, 0.0, p) == 0.0 and dt_k1_hat(3.0, 0.0, p) == 1.0
    h = 1e-5
    fd0 = (k0_hat(1 + h, 1.0, p) - k0_hat(1 - h, 1.0, p)) / (2 * h)
    fd1 = (k1_hat(1 + h, 1.0, p) - k1_hat(1 - h, 1.0, p)) / (2 * h)
    assert abs(dt_k0_hat(1.0, 1.0, p) - fd0) <= 1e-8
    assert abs(dt_k1_hat(1.0, 1.0, p) - fd1) <= 1e-8


@settings(max_examples=60, deadline=None)
@given(st.floats(0.1, 10), st.floats(0, 5), st.sampled_from(NUS))
def test_ode_satisfaction(t, r, nu):
    p = SymbolParams(nu=nu)
    a, b = nu * r * r, r * r
    h = 1e-5
    for k, dk in ((k0_hat, dt_k0_hat), (k1_hat, dt_k1_hat)):
        u, ud = k(t, r, p), dk(t, r, p)
        # second derivative from the identities: d/dt (dt_k0) = -r^2 dt_k1,
        # d/dt (dt_k1) = dt_k0 - nu r^2 dt_k1
        if k is k0_hat:
            udd = -b * dt_k1_hat(t, r, p)
        else:
            udd = dt_k0_hat(t, r, p) - a * dt_k1_hat(t, r, p)
        fd = (dk(t + h, r, p) - dk(t - h, r, p)) / (2 * h)
        assert abs(udd - fd) <= 1e-6 * max(1.0, abs(udd))
        assert abs(udd + a * ud + b * u) <= 1e-6 * max(1.0, abs(udd))


@pytest.mark.parametrize("nu", NUS)
@pytest.mark.parametrize("t", [0.1, 1.0, 10.0])
def test_continuity_at_degenerate_frequency(nu, t):
    p = SymbolParams(nu=nu)
    rd = 2.0 / nu
    for f in (k0_hat, k1_hat, dt_k0_hat, dt_k1_hat):
        gaps = []
        for k in range(4, 11):
            h = 10.0 ** -k
            gaps.append(abs(f(t, rd + h, p) - f(t, rd - h, p)))
        # Lipschitz across rd: the jump shrinks with h and is negligible at 1e-10
        assert gaps[-1] <= 1e-10 * max(1.0, abs(f(t, rd, p))) + 10 * 1e-10 * (1 + t) * rd
        assert all(g <= 1e-12 + 10 ** (-k + 1) * (1 + t) * (1 + rd) for g, k in zip(gaps, range(4, 11)))


def test_g_d_j_examples():
    p2 = SymbolParams(nu=2, beta=1)
    p1 = SymbolParams(nu=1)
    assert g_hat(5.0, 0.0, p1) == 5.0
    assert g_hat(math.pi, 1.0, p1) == pytest.approx(0, abs=1e-15)
    oracle = math.exp(-1) * math.sin(1)
    assert g_hat(1.0, 1.0, p2) == pytest.approx(oracle, rel=1e-14)
    assert g_hat(1.0, 1.0, p2) == pytest.approx(0.3095598, abs=1e-7)
    assert d_hat(3.0, 0.0, p1) == 0 and d_hat(0.0, 2.0, p1) == 0
    oracle = (math.exp(-1) - 1) * math.sin(1)
    assert d_hat(1.0, 1.0, p2) == pytest.approx(oracle, rel=1e-14)
    assert d_hat(1.0, 1.0, p2) == pytest.approx(-0.5319112, abs=1e-7)
    assert j_beta_hat(0.0, 2.0, p2) == 0 and j_beta_hat(4.0, 0.0, p2) == 0
    oracle = math.exp(-1) * (math.exp(-1) - 1) * math.sin(1)
    assert j_beta_hat(1.0, 1.0, p2) == pytest.approx(oracle, rel=1e-14)
    # the closed form gives -0.1956792 to seven places
    assert j_beta_hat(1.0, 1.0, p2) == pytest.approx(-0.1956792, abs=1e-7)


@given(st.floats(0, 20), st.floats(0, 20), st.sampled_from(NUS))
def test_d_hat_is_g_minus_omega(t, r, nu):
    p = SymbolParams(nu=nu)
    assert abs(d_hat(t, r, p) - (g_hat(t, r, p) - omega(t, r))) <= 1e-14


def test_symbols_bounded():
    t = np.logspace(-2, 4, 61)[:, None]
    r = np.concatenate([[0.0], np.logspace(-4, 3, 141)])[None, :]
    for nu in NUS:
        p = SymbolParams(nu=nu)
        assert np.max(np.abs(k0_hat(t, r, p))) <= 1 + 1e-12
        assert np.max(np.abs(k1_hat(t, r, p) * r)) <= 1 + 1e-12


def test_dn_rate():
    assert dn_rate(1, 4.0) == 2.0
    assert dn_rate(2, math.e**2) == pytest.approx(math.sqrt(2), rel=1e-15)
    assert dn_rate(3, 16.0) == pytest.approx(0.5, rel=1e-15)
    with pytest.raises(DomainError):
        dn_rate(1, 1.5)


def test_domain_errors():
    p = SymbolParams()
    for f in (k0_hat, k1_hat, g_hat, d_hat, j_beta_hat):
        with pytest.raises(DomainError):
            f(-1.0, 1.0, p)
        with pytest.raises(DomainError):
            f(1.0, -1.0, p)
