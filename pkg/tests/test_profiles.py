import math

import numpy as np
import pytest
from scipy import integrate

from sdwave.gridlab import GridSpec
from sdwave.profiles import (
    SPHERE_AREA,
    ResolutionError,
    gaussian,
    make_profile,
    mexican_hat,
    plancherel_factor,
    sample_on_grid,
    scaled_gaussian,
)
from sdwave.symbols import DomainError

PROFILES = [
    gaussian(1.0, 1.0, 1),
    gaussian(-2.5, 0.7, 2),
    gaussian(0.3, 1.9, 3),
    mexican_hat(1.0, 1.0, 1),
    mexican_hat(1.0, 1.0, 2),
    mexican_hat(2.0, 0.5, 3),
    scaled_gaussian(4.0, 1.3, 2),
]


def test_gaussian_examples():
    g = gaussian(1, 1, 1)
    assert g.mass == pytest.approx(math.sqrt(2 * math.pi), rel=1e-15)
    assert g.mass == pytest.approx(2.5066283, abs=1e-7)
    z = gaussian(0, 1, 2)
    assert z.mass == 0 and z.l2_norm == 0
    assert gaussian(1, 1, 2).l2_norm == pytest.approx(math.sqrt(math.pi), rel=1e-15)
    assert gaussian(1, 1, 2).l2_norm == pytest.approx(1.7724539, abs=1e-7)
    with pytest.raises(DomainError):
        gaussian(1, 0, 1)
    with pytest.raises(DomainError):
        mexican_hat(1, -1, 1)


def test_mexican_hat_examples():
    for A, s, n in [(1, 1, 1), (2, 0.5, 2), (-1, 3, 3)]:
        assert mexican_hat(A, s, n).mass == 0
    assert mexican_hat(1, 1, 2).l2_norm ** 2 == pytest.approx(2 * math.pi, rel=1e-14)
    assert mexican_hat(1, 2, 1).fourier_side(1.0) == pytest.approx(-math.sqrt(8 * math.pi) * math.exp(-2), rel=1e-15)
    assert mexican_hat(1, 2, 1).fourier_side(1.0) == pytest.approx(-0.6785, abs=1e-4)


def test_mexican_hat_l1_closed_form():
    # in 1-d, |x^2 - 1| e^{-x^2/2} integrates to 4 e^{-1/2}: the mean is zero
    # and (1 - x^2) e^{-x^2/2} is the derivative of x e^{-x^2/2}
    assert mexican_hat(1, 1, 1).l1_norm == pytest.approx(4 * math.exp(-0.5), rel=1e-12)


@pytest.mark.parametrize("g", PROFILES, ids=lambda g: f"{g.describe()}-n{g.dim}")
def test_mass_is_fourier_side_at_zero(g):
    assert g.mass == g.fourier_side(0.0)


@pytest.mark.parametrize("g", PROFILES, ids=lambda g: f"{g.describe()}-n{g.dim}")
def test_plancherel_self_consistency(g):
    n = g.dim
    f = lambda r: g.fourier_side(r) ** 2 * r ** (n - 1)
    val, _ = integrate.quad(f, 0, np.inf, epsabs=0, epsrel=1e-13, limit=200)
    assert plancherel_factor(n) * val == pytest.approx(g.l2_norm**2, rel=1e-10)


@pytest.mark.parametrize("g", PROFILES, ids=lambda g: f"{g.describe()}-n{g.dim}")
def test_physical_side_norms(g):
    n = g.dim
    area = SPHERE_AREA[n]
    l2, _ = integrate.quad(lambda p: g.physical(p) ** 2 * p ** (n - 1), 0, np.inf, epsrel=1e-13, limit=200)
    assert area * l2 == pytest.approx(g.l2_norm**2, rel=1e-10)
    m, _ = integrate.quad(lambda p: g.physical(p) * p ** (n - 1), 0, np.inf, epsabs=1e-12, epsrel=1e-11, limit=200)
    assert area * m == pytest.approx(g.mass, rel=1e-10, abs=1e-12)


def test_scaling():
    a, b = gaussian(1.5, 0.8, 2), gaussian(3.0, 0.8, 2)
    assert b.mass == 2 * a.mass
    assert b.l1_norm == 2 * a.l1_norm
    assert b.l2_norm == 2 * a.l2_norm


def test_scaled_gaussian_mass():
    for n in (1, 2, 3):
        assert scaled_gaussian(3.0, 0.6, n).mass == pytest.approx(3.0, rel=1e-14)
    assert make_profile("scaled_gaussian", 2.0, 1.0, 1).mass == pytest.approx(2.0, rel=1e-15)
    with pytest.raises(DomainError):
        make_profile("dipole", 1, 1, 1)


def test_sample_on_grid():
    grid = GridSpec(1, 512, 16.0)
    g = gaussian(1, 1, 1)
    field = sample_on_grid(g, grid)
    riemann = field.values.sum() * grid.spacing
    assert riemann == pytest.approx(math.sqrt(2 * math.pi), rel=1e-8)
    assert not np.any(sample_on_grid(gaussian(0, 1, 1), grid).values)
    for spec in (GridSpec(1, 512, 16.0), GridSpec(2, 256, 8.0)):
        hat = sample_on_grid(mexican_hat(1, 1, spec.dim), spec)
        assert abs(hat.values.sum() * spec.cell_volume) <= 1e-10


def test_sample_on_grid_errors():
    with pytest.raises(ResolutionError):
        sample_on_grid(gaussian(1, 1, 1), GridSpec(1, 64, 16.0))
    with pytest.raises(DomainError):
        sample_on_grid(gaussian(1, 1, 2), GridSpec(1, 512, 16.0))
