import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pdm_oscillator import (BoundStateError, Convention, Coordinate, DomainError, Grid, GridError,
                            ModelParams, WaveFn)
from pdm_oscillator.core import (GRID_ENV_VAR, default_grid, deformed_derivative,
                                 deformed_second_derivative, grid_points, integrate, sample)


def test_params_derived_quantities():
    p = ModelParams(m0=2.0, omega0=3.0, hbar=1.5, gamma=0.7)
    assert p.sigma0 == pytest.approx(math.sqrt(0.25))
    assert p.gtilde == pytest.approx(0.35)
    assert p.s == pytest.approx(1 / 0.35 ** 2)
    assert p.x_min == pytest.approx(-1 / 0.7)
    assert ModelParams.from_gtilde(0.4).s == pytest.approx(6.25)


@pytest.mark.parametrize("kw", [{"gamma": -0.1}, {"m0": 0.0}, {"hbar": -1.0}, {"omega0": 0.0}])
def test_params_rejects_invalid(kw):
    with pytest.raises(DomainError):
        ModelParams(**kw)


def test_gamma_zero_guards():
    p = ModelParams()
    assert p.x_min == -math.inf
    with pytest.raises(DomainError):
        p.s
    np.testing.assert_array_equal(p.xgamma_of_x([1.0, -3.0]), [1.0, -3.0])
    with pytest.raises(GridError):
        Grid(Coordinate.Z, np.array([1.0, 2.0]), p)
    p.require_level(1000)


def test_require_level():
    p = ModelParams.from_gtilde(0.4)
    p.require_level(5)
    with pytest.raises(BoundStateError):
        p.require_level(6)
    with pytest.raises(BoundStateError):
        p.require_level(-1)


@settings(max_examples=50, deadline=None)
@given(st.floats(0.05, 0.9), st.floats(-0.99, 5.0))
def test_coordinate_round_trips(g, u):
    p = ModelParams.from_gtilde(g)
    x = u / p.gamma
    assert p.x_of_xgamma(p.xgamma_of_x(x)) == pytest.approx(x, rel=1e-10, abs=1e-12)
    assert p.x_of_z(p.z_of_x(x)) == pytest.approx(x, rel=1e-9, abs=1e-9)


def test_grid_validation():
    p = ModelParams.from_gtilde(0.5)
    with pytest.raises(GridError):
        Grid(Coordinate.X, np.array([0.0, 0.0, 1.0]), p)
    with pytest.raises(GridError):
        Grid(Coordinate.X, np.array([-3.0, 1.0]), p)
    with pytest.raises(GridError):
        Grid(Coordinate.XGAMMA, np.array([1.0]), p)
    g = Grid(Coordinate.X, np.array([0.0, 0.1, 0.3]), p)
    with pytest.raises(GridError):
        g.spacing
    with pytest.raises(GridError):
        g.require_stencil()


def test_grid_views_agree():
    p = ModelParams.from_gtilde(0.4)
    xg = np.linspace(-3, 4, 50)
    gx = Grid(Coordinate.XGAMMA, xg, p)
    gz = Grid(Coordinate.Z, gx.z, p)
    np.testing.assert_allclose(gz.x, gx.x, rtol=1e-12, atol=1e-12)
    np.testing.assert_allclose(gx.weight, 1 + p.gamma * gx.x, rtol=1e-12)


def test_integrate_measures():
    p = ModelParams.from_gtilde(0.3)
    g = Grid(Coordinate.XGAMMA, np.linspace(-2, 3, 20001), p)
    # integral of dx over [x(-2), x(3)]
    assert integrate(g, np.ones(len(g))) == pytest.approx(g.x[-1] - g.x[0], rel=1e-8)
    # deformed measure dx/(1+gamma x) = d x_gamma
    assert integrate(g, np.ones(len(g)), Convention.PHI) == pytest.approx(5.0, rel=1e-12)


def test_deformed_derivative_on_every_coordinate():
    p = ModelParams.from_gtilde(0.4)
    xg = np.linspace(-2, 3, 2001)
    for grid in (Grid(Coordinate.XGAMMA, xg, p),
                 Grid(Coordinate.X, np.linspace(-1.5, 4.0, 2001), p),
                 Grid(Coordinate.Z, np.linspace(3.0, 30.0, 2001), p)):
        x = grid.x
        f = np.sin(x)
        exact = (1 + p.gamma * x) * np.cos(x)
        np.testing.assert_allclose(deformed_derivative(grid, f), exact, atol=1e-7)
    g = Grid(Coordinate.XGAMMA, xg, p)
    f = np.exp(-xg ** 2)
    np.testing.assert_allclose(deformed_second_derivative(g, f), (4 * xg ** 2 - 2) * f, atol=1e-7)


def test_wavefn_arithmetic_and_conventions():
    p = ModelParams.from_gtilde(0.4)
    g = default_grid(p)
    psi = sample(g, lambda x: np.exp(-x * x))
    phi = psi.to_phi()
    assert phi.convention is Convention.PHI
    assert phi.norm() == pytest.approx(psi.norm(), rel=1e-12)
    np.testing.assert_allclose(phi.to_psi().values, psi.values)
    assert (2 * psi - psi).norm() == pytest.approx(psi.norm())
    with pytest.raises(DomainError):
        psi + phi
    other = Grid(Coordinate.XGAMMA, g.points[:-1], p)
    with pytest.raises(GridError):
        psi - WaveFn(other, np.zeros(len(other)))
    with pytest.raises(GridError):
        WaveFn(g, np.zeros(3))


def test_default_grid_and_env(monkeypatch):
    p = ModelParams.from_gtilde(0.4)
    monkeypatch.delenv(GRID_ENV_VAR, raising=False)
    assert grid_points() == 4001
    g = default_grid(p)
    assert len(g) >= 4001 and g.spacing <= 0.01
    monkeypatch.setenv(GRID_ENV_VAR, "9001")
    assert len(default_grid(p)) == 9001
    monkeypatch.setenv(GRID_ENV_VAR, "4")
    with pytest.raises(GridError):
        grid_points()
