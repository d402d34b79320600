import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pdm_oscillator import BoundStateError, Convention, DomainError, ModelParams, spectrum, susy
from pdm_oscillator.core import default_grid, deformed_second_derivative, integrate
from pdm_oscillator.oracle import Observable, expectation_quadrature

GAMMAS = (0.1, 0.2, 0.4)


def test_max_bound_index_examples():
    assert spectrum.max_bound_index(ModelParams.from_gtilde(0.4)) == 5
    assert spectrum.max_bound_index(ModelParams.from_gtilde(1.0)) == 0
    assert spectrum.max_bound_index(ModelParams()) == math.inf
    with pytest.raises(BoundStateError):
        spectrum.max_bound_index(ModelParams.from_gtilde(1.5))


@settings(max_examples=60, deadline=None)
@given(st.floats(0.05, 1.4))
def test_max_bound_index_is_the_last_bound_level(g):
    p = ModelParams.from_gtilde(g)
    n = spectrum.max_bound_index(p)
    assert 2 * p.s - 2 * n - 1 > 0 >= 2 * p.s - 2 * (n + 1) - 1


def test_energy_examples():
    assert spectrum.energy(ModelParams(), 2) == 2.5
    p = ModelParams.from_gtilde(0.4)
    assert spectrum.energy(p, 0) == pytest.approx(0.48, abs=1e-15)
    assert spectrum.energy(p, 1) == pytest.approx(1.32, abs=1e-15)
    with pytest.raises(BoundStateError):
        spectrum.energy(p, 6)


@pytest.mark.parametrize("g", [0.1, 0.4, 0.8, 1.0])
def test_energy_increasing(g):
    p = ModelParams.from_gtilde(g)
    e = [spectrum.energy(p, n) for n in range(min(30, spectrum.max_bound_index(p)) + 1)]
    assert np.all(np.diff(e) > 0)


def test_energy_with_dimensions():
    p = ModelParams(m0=2.0, omega0=3.0, hbar=0.5, gamma=0.4)
    k = 1.5
    assert spectrum.energy(p, 1) == pytest.approx(0.5 * 3 * k - 0.25 * 0.16 * k * k / 4)


def test_eigenfunction_outside_domain_is_zero():
    p = ModelParams.from_gtilde(0.4)
    vals = spectrum.eigenfunction(p, 2, np.array([-3.0, -2.5, -10.0]))
    assert np.all(vals == 0.0)


@pytest.mark.parametrize("g", GAMMAS)
def test_orthonormality(g):
    p = ModelParams.from_gtilde(g)
    grid = default_grid(p)
    fs = [spectrum.eigenfunction_on(grid, n).values for n in range(6)]
    gram = np.array([[integrate(grid, a * b) for b in fs] for a in fs])
    assert np.max(np.abs(gram - np.eye(6))) <= 1e-8


def test_ground_state_near_gaussian_for_tiny_gamma():
    p = ModelParams.from_gtilde(1e-3)
    x = np.linspace(-4, 4, 401)
    diff = spectrum.eigenfunction(p, 0, x) - spectrum.hermite_function(0, x)
    assert np.max(np.abs(diff)) <= 1e-2


def test_gamma_zero_dispatches_to_hermite():
    p = ModelParams()
    x = np.linspace(-3, 3, 7)
    np.testing.assert_allclose(spectrum.eigenfunction(p, 1, x),
                               math.sqrt(2) * x * np.pi ** -0.25 * np.exp(-x * x / 2))
    assert spectrum.moments(p, 0) == (0.0, 0.5, 0.0, 0.5)
    assert spectrum.uncertainty_product(p, 0) == 0.5


@pytest.mark.parametrize("g", [0.2, 0.4, 0.8])
def test_node_count(g):
    p = ModelParams.from_gtilde(g)
    grid = default_grid(p)
    for n in range(min(5, spectrum.max_bound_index(p)) + 1):
        # phi = sqrt(1 + gamma x) psi stays finite at the left edge
        phi = spectrum.eigenfunction_on(grid, n, Convention.PHI).values
        assert spectrum.count_nodes(phi) == n


@pytest.mark.parametrize("g", GAMMAS)
def test_deformed_schrodinger_residual(g):
    p = ModelParams.from_gtilde(g)
    grid = default_grid(p)
    for n in range(6):
        phi = spectrum.eigenfunction_on(grid, n, Convention.PHI).values
        res = (-0.5 * deformed_second_derivative(grid, phi) + 0.5 * grid.x ** 2 * phi
               - spectrum.energy(p, n) * phi)
        rel = math.sqrt(integrate(grid, res ** 2, Convention.PHI)
                        / integrate(grid, phi ** 2, Convention.PHI))
        assert rel <= 1e-5


def test_ground_density():
    p = ModelParams.from_gtilde(0.4)
    assert spectrum.ground_shape(p) == pytest.approx(11.5)
    grid = default_grid(p)
    rho = spectrum.ground_density(p, grid.x)
    assert integrate(grid, rho) == pytest.approx(1.0, abs=1e-10)
    psi0 = spectrum.eigenfunction_on(grid, 0).values
    assert np.max(np.abs(rho - psi0 ** 2)) <= 1e-12
    z = grid.z
    assert z[np.argmax(rho)] == pytest.approx(10.5, abs=0.05)
    with pytest.raises(DomainError):
        spectrum.ground_density(ModelParams.from_gtilde(1.5), 0.0)


def test_moments_examples():
    ex, ex2, epi, epi2 = spectrum.moments(ModelParams.from_gtilde(0.4), 0)
    assert ex == pytest.approx(-0.2)
    assert ex2 == pytest.approx(0.5)
    assert epi == 0.0
    assert epi2 == pytest.approx(0.46)


@pytest.mark.parametrize("g", GAMMAS)
def test_moments_match_quadrature(g):
    p = ModelParams.from_gtilde(g)
    grid = default_grid(p)
    for n in range(6):
        f = spectrum.eigenfunction_on(grid, n)
        got = [expectation_quadrature(f, o).real
               for o in (Observable.X, Observable.X2, Observable.PI, Observable.PI2)]
        np.testing.assert_allclose(got, spectrum.moments(p, n), atol=1e-8)


def test_uncertainty_product_examples():
    p = ModelParams.from_gtilde(0.4)
    assert spectrum.uncertainty_product(p, 0) == pytest.approx(0.46)
    # 1.5 * (1 - 0.16 * 1.5), checked against the moments below
    assert spectrum.uncertainty_product(p, 1) == pytest.approx(1.14)
    ex, ex2, _, epi2 = spectrum.moments(p, 1)
    assert math.sqrt((ex2 - ex * ex) * epi2) == pytest.approx(1.14)


@pytest.mark.parametrize("g", [0.1, 0.4, 0.8, 1.0])
def test_gup_holds_for_every_level(g):
    p = ModelParams.from_gtilde(g)
    for n in range(spectrum.max_bound_index(p) + 1):
        assert spectrum.uncertainty_product(p, n) >= spectrum.gup_bound(p, n) - 1e-15


def test_number_expectation():
    p = ModelParams.from_gtilde(0.4)
    assert spectrum.number_expectation(p, 0) == 0.0
    assert spectrum.number_expectation(p, 1) == pytest.approx(0.84)
    assert spectrum.number_expectation(p, 2) == pytest.approx(1.52)
    for n in range(6):
        assert spectrum.number_expectation(p, n) == pytest.approx(
            susy.partner_energy(p, n, susy.Side.PLUS), abs=1e-14)


def test_quantum_level():
    p = ModelParams.from_gtilde(0.4)
    lvl = spectrum.QuantumLevel(2, p)
    assert lvl.nu == pytest.approx(7.5)
    assert lvl.norm_sq == pytest.approx(7.5 * 0.4 * 2 / math.gamma(10.5), rel=1e-12)
    with pytest.raises(BoundStateError):
        spectrum.QuantumLevel(6, p)
