"""The twelve acceptance criteria, each at its stated tolerance.

Every test records a one-line verdict that the conftest prints at the end
of the run, then asserts it.
"""
import hashlib
import math
import subprocess
import sys
import time

import numpy as np
import pytest

from sdwave import asymptotics, gridlab, quadrature
from sdwave.asymptotics import verify
from sdwave.gridlab import GridField, GridSpec, evolve_damped, evolve_wave, l2_norm, mode_oracle
from sdwave.profiles import gaussian, sample_on_grid
from sdwave.quadrature import MULTIPLIER_IDS, QuadratureSpec, plancherel_norm
from sdwave.symbols import SymbolParams, k0_hat, k1_hat


def fresh():
    """Drop cached curves so each timing covers the full computation."""
    asymptotics._cached_curve.cache_clear()
    asymptotics.a2_bound.cache_clear()


def timed_claims(ids):
    fresh()
    t0 = time.perf_counter()
    reports = [verify(c) for c in ids]
    return reports, time.perf_counter() - t0


def summary(rep, keys):
    return ", ".join(f"{k}={rep.measured[k]:.4g}" for k in keys if k in rep.measured)


def failed_checks(reports):
    return [f"{r.claim_id}:{k}" for r in reports for k, ok in r.checks.items() if not ok]


def test_01_symbols_vs_rk4(record):
    t0 = time.perf_counter()
    worst = 0.0
    for nu in (0.5, 1.0, 2.0):
        p = SymbolParams(nu=nu)
        for r in (0.0, 0.1, 1.0, 2.0 / nu, 5.0, 20.0):
            for t in (0.1, 1.0, 10.0):
                for sym, data in ((k0_hat, (1.0, 0.0)), (k1_hat, (0.0, 1.0))):
                    u, _ = mode_oracle(r, nu, t, *data)
                    v = sym(t, r, p)
                    worst = max(worst, abs(v - u) / abs(u))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-8 and elapsed < 10
    record(1, ok, f"max rel err {worst:.2e} (tol 1e-8), {elapsed:.1f} s (limit 10 s)")
    assert ok


def test_02_filon_vs_brute(record):
    brute = QuadratureSpec(oscillation_mode="brute")
    t0 = time.perf_counter()
    worst, cases = 0.0, 0
    for n in (1, 2, 3):
        p = SymbolParams(nu=1, dim=n, beta=1)
        weights = [gaussian(1, 1, n)]
        for m in MULTIPLIER_IDS:
            ws = weights + (["unit"] if m == "Jbeta" or (m == "D" and n == 1) else [])
            for w in ws:
                for t in (1.0, 10.0, 100.0, 1000.0):
                    a = plancherel_norm(m, t, p, w).value
                    b = plancherel_norm(m, t, p, w, brute).value
                    worst = max(worst, abs(a - b) / b)
                    cases += 1
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-8 and elapsed < 120
    record(2, ok, f"{cases} cases, max rel diff {worst:.2e} (tol 1e-8), {elapsed:.1f} s (limit 120 s)")
    assert ok


def test_03_difference_grows_like_t_quarter(record):
    (rep,), elapsed = timed_claims(["thm11"])
    ok = rep.passed and elapsed < 60
    detail = summary(rep, ["D_norm_alpha", "ratio_sup"]) or summary(rep, list(rep.measured)[:3])
    record(3, ok, f"{detail}; {elapsed:.1f} s (limit 60 s) {failed_checks([rep])}")
    assert ok


def test_04_difference_grows_like_sqrt_log(record):
    reps, elapsed = timed_claims(["thm12", "zero_mass_control"])
    ok = all(r.passed for r in reps) and elapsed < 120
    detail = "; ".join(summary(r, list(r.measured)[:3]) for r in reps)
    record(4, ok, f"{detail}; {elapsed:.1f} s (limit 120 s) {failed_checks(reps)}")
    assert ok


def test_05_grow_up_and_free_wave(record):
    reps, elapsed = timed_claims(["eq14", "eq15", "eq16", "eq18_110"])
    ok = all(r.passed for r in reps) and elapsed < 180
    record(5, ok, f"eq14/15/16/18_110 {[r.passed for r in reps]}; {elapsed:.1f} s (limit 180 s) "
                  f"{failed_checks(reps)}")
    assert ok


def test_06_k1_minus_g_decay(record):
    (rep,), elapsed = timed_claims(["lem22"])
    alphas = {k: round(v, 4) for k, v in rep.measured.items() if k.endswith("_alpha")}
    record(6, rep.passed, f"{alphas} (targets -0.25, -0.5 +/- 0.03) {failed_checks([rep])}")
    assert rep.passed


def test_07_jbeta_log_growth(record):
    (rep,), elapsed = timed_claims(["lem23"])
    record(7, rep.passed, f"{summary(rep, list(rep.measured)[:4])} {failed_checks([rep])}")
    assert rep.passed


def test_08_a_split(record):
    (rep,), elapsed = timed_claims(["a_split"])
    record(8, rep.passed, f"{summary(rep, list(rep.measured)[:4])} {failed_checks([rep])}")
    assert rep.passed


def test_09_jbeta_defect_is_small_o(record):
    (rep,), elapsed = timed_claims(["prop24"])
    ratios = [f"{v:.4g}" for k, v in rep.measured.items() if k.startswith("ratio_t")]
    record(9, rep.passed, f"ratios at 1e3..1e12: {ratios} {failed_checks([rep])}")
    assert rep.passed


def test_10_energy(record):
    (rep,), elapsed = timed_claims(["energy_dissipation"])
    ok = rep.passed and elapsed < 60
    record(10, ok, f"{summary(rep, list(rep.measured)[:3])}; {elapsed:.1f} s (limit 60 s) "
                   f"{failed_checks([rep])}")
    assert ok


def cross_path_cases():
    # n = 1 and n = 2 Gaussian data, all times at most L/2
    for n, pts, half in ((1, 4096, 64.0), (2, 512, 32.0)):
        spec = GridSpec(n, pts, half)
        g = gaussian(1, 1, n)
        yield spec, g, [half / 2**k for k in range(6, 0, -1)]


def test_11_cross_path(record):
    worst = 0.0
    for spec, g, times in cross_path_cases():
        p = SymbolParams(nu=1, dim=spec.dim)
        field = sample_on_grid(g, spec)
        z = GridField.zeros(spec)
        for t in times:
            pairs = (
                (l2_norm(evolve_damped(z, field, t, 1.0).u), plancherel_norm("K1", t, p, g).value),
                (l2_norm(evolve_damped(field, z, t, 1.0).u), plancherel_norm("K0", t, p, g).value),
                (
                    l2_norm(evolve_damped(field, field, t, 1.0).u - evolve_wave(z, field, t).u),
                    quadrature.radial_norm([("K0", g), ("K1_minus_G", g), ("D", g)], t, p).value,
                ),
            )
            for grid_value, quad_value in pairs:
                worst = max(worst, abs(grid_value - quad_value) / quad_value)
    ok = worst <= 1e-3
    record(11, ok, f"max rel diff {worst:.2e} over K1*g, K0*g, u - W u1 in n = 1, 2 (tol 1e-3)")
    assert ok


def run_all(out):
    t0 = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "sdwave", "verify", "--claim", "all", "--out", str(out)],
                          capture_output=True, text=True)
    return proc, time.perf_counter() - t0


def digests(path):
    return {p.name: hashlib.sha256(p.read_bytes()).hexdigest() for p in sorted(path.iterdir())}


def test_12_determinism(record, tmp_path):
    a, ta = run_all(tmp_path / "a")
    b, tb = run_all(tmp_path / "b")
    da, db = digests(tmp_path / "a"), digests(tmp_path / "b")
    same = da == db and a.stdout == b.stdout
    ok = same and a.returncode == 0 and b.returncode == 0
    record(12, ok, f"{len(da)} files byte-identical: {same}; exit codes {a.returncode}, {b.returncode}; "
                   f"verify all took {ta:.0f} s and {tb:.0f} s")
    assert ok
