import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pdm_oscillator import DomainError, ModelParams, RegimeError
from pdm_oscillator.classical import (ClassicalOrbit, ClassicalState, alpha_of_state,
                                      amplitude_of_energy, canonical_map, canonical_map_inverse,
                                      classical_energy, deformed_phase,
                                      equation_of_motion_residual, morse_params, morse_trajectory,
                                      orbit_frequency, orbit_of_state, phase_time,
                                      poisson_bracket, rk4_oracle, trajectory)

TAU0 = 2 * math.pi


def test_phase_examples():
    p0 = ModelParams()
    assert deformed_phase(ClassicalOrbit(p0, 1.0), 1.3) == pytest.approx(1.3, rel=1e-14)
    orbit = ClassicalOrbit(ModelParams.from_gtilde(0.8), 1.0, t0=0.7)
    assert deformed_phase(orbit, 0.7) == 0.0
    h = 1e-5
    rate = (deformed_phase(orbit, 0.7 + h) - deformed_phase(orbit, 0.7 - h)) / (2 * h)
    assert rate == pytest.approx(1.8, rel=1e-8)


def test_phase_ode_continuity_and_period():
    orbit = ClassicalOrbit(ModelParams.from_gtilde(0.8), 1.0)
    t = np.linspace(0, 5 * TAU0, 3001)
    th = deformed_phase(orbit, t)
    assert np.all(np.diff(th) > 0)
    h = 1e-4
    rate = (deformed_phase(orbit, t + h) - deformed_phase(orbit, t - h)) / (2 * h)
    assert np.max(np.abs(rate - (1 + 0.8 * np.cos(th)))) <= 1e-6
    ts = np.linspace(0, TAU0, 50)
    jump = deformed_phase(orbit, ts + orbit.period) - deformed_phase(orbit, ts)
    assert np.max(np.abs(jump - 2 * math.pi)) <= 1e-9


def test_phase_time_inverts_phase():
    orbit = ClassicalOrbit(ModelParams.from_gtilde(0.5), 1.2, t0=0.3)
    t = np.linspace(-4, 20, 97)
    np.testing.assert_allclose(phase_time(orbit, deformed_phase(orbit, t)), t, atol=1e-11)


def test_orbit_frequency_examples():
    assert orbit_frequency(ModelParams(), 3.0) == 1.0
    assert orbit_frequency(ModelParams.from_gtilde(0.8), 1.0) == pytest.approx(0.6, rel=1e-14)
    assert orbit_frequency(ModelParams.from_gtilde(0.4), 1.0) == pytest.approx(0.916515, abs=1e-6)
    with pytest.raises(RegimeError):
        orbit_frequency(ModelParams.from_gtilde(0.5), 2.0)
    with pytest.raises(RegimeError):
        ClassicalOrbit(ModelParams.from_gtilde(1.0), 1.5)


def test_trajectory_examples():
    p = ModelParams.from_gtilde(0.4)
    orbit = ClassicalOrbit(p, 1.0)
    assert trajectory(orbit, 0.0) == (1.0, 0.0, -0.0)
    t_pi = phase_time(orbit, math.pi)
    x, mom, pi = trajectory(orbit, t_pi)
    assert x == pytest.approx(-1.0, abs=1e-12)
    assert pi == pytest.approx(0.0, abs=1e-12) and mom == pytest.approx(0.0, abs=1e-12)
    o0 = ClassicalOrbit(ModelParams(), 2.0)
    x, mom, pi = trajectory(o0, math.pi / 2)
    assert (x, mom, pi) == pytest.approx((0.0, -2.0, -2.0), abs=1e-14)


def test_energy_examples():
    assert classical_energy(ModelParams(), ClassicalState(0.0, 0.0)) == 0.0
    assert classical_energy(ModelParams(), ClassicalState(2.0, 0.0)) == 2.0
    assert classical_energy(ModelParams.from_gtilde(0.4), ClassicalState(1.0, 0.0)) == 0.5
    assert amplitude_of_energy(ModelParams(), 2.0) == 2.0
    with pytest.raises(DomainError):
        classical_energy(ModelParams.from_gtilde(0.5), ClassicalState(-2.0, 0.0))


@pytest.mark.parametrize("g", [0.1, 0.4, 0.8])
def test_energy_conserved_along_closed_form(g):
    p = ModelParams.from_gtilde(g)
    orbit = ClassicalOrbit(p, 1.0)
    x, mom, _ = trajectory(orbit, np.linspace(0, 5 * TAU0, 2001))
    e = classical_energy(p, ClassicalState(x, mom))
    assert np.max(np.abs(e / 0.5 - 1)) <= 1e-10


def test_canonical_map_examples():
    p = ModelParams.from_gtilde(0.5)
    xg, pi = canonical_map(p, ClassicalState(2.0, 0.3))
    assert xg == pytest.approx(2 * math.log(2), rel=1e-14)
    assert pi == pytest.approx(0.6)
    assert canonical_map(p, ClassicalState(0.0, 0.7)) == (0.0, 0.7)
    assert canonical_map(ModelParams(), ClassicalState(-5.0, 0.7)) == (-5.0, 0.7)
    with pytest.raises(DomainError):
        canonical_map(p, ClassicalState(-2.0, 0.0))


@settings(max_examples=60, deadline=None)
@given(st.floats(0.01, 0.9), st.floats(-0.95, 4.0), st.floats(-5, 5))
def test_canonical_map_round_trip(g, u, mom):
    p = ModelParams.from_gtilde(g)
    state = ClassicalState(u / p.gamma, mom)
    back = canonical_map_inverse(p, *canonical_map(p, state))
    assert back.x == pytest.approx(state.x, rel=1e-12, abs=1e-12)
    assert back.p == pytest.approx(state.p, rel=1e-12, abs=1e-12)


def test_morse_examples():
    mp = morse_params(ModelParams.from_gtilde(0.4))
    assert mp.W == pytest.approx(3.125)
    assert mp.kappa == -0.4
    assert mp.omega_small == pytest.approx(0.84)
    assert mp.W_tilde == pytest.approx(0.84 ** 2 / 0.32)
    # ln(0.84)/0.4 evaluated directly
    assert mp.delta == pytest.approx(math.log(0.84) / 0.4, rel=1e-14)
    assert mp.delta == pytest.approx(-0.43588347, abs=1e-8)
    with pytest.raises(DomainError):
        morse_params(ModelParams())
    assert math.isnan(morse_params(ModelParams.from_gtilde(1.2)).delta)


def test_morse_trajectory_conserves_morse_energy():
    p = ModelParams.from_gtilde(0.4)
    mp = morse_params(p)
    xg, pi = morse_trajectory(ClassicalOrbit(p, 1.5), np.linspace(0, 3 * TAU0, 500))
    k = pi ** 2 / 2 + mp.W * np.expm1(p.gamma * xg) ** 2
    np.testing.assert_allclose(k, 0.5 * 1.5 ** 2, rtol=1e-12)


def test_rk4_examples():
    p0 = ModelParams()
    path = rk4_oracle(p0, ClassicalState(1.0, 0.0), TAU0)
    err = max(abs(s.x - math.cos(t)) for t, s in path)
    assert err <= 1e-8
    assert path[-1][0] == pytest.approx(TAU0, abs=1e-12)
    assert rk4_oracle(p0, ClassicalState(0.3, 0.1), 0.0) == [(0.0, ClassicalState(0.3, 0.1))]
    with pytest.raises(DomainError):
        rk4_oracle(p0, ClassicalState(1.0, 0.0), 1.0, dt=0.0)


def test_rk4_matches_closed_form():
    p = ModelParams.from_gtilde(0.4)
    path = rk4_oracle(p, ClassicalState(1.0, 0.0), 3 * TAU0)
    ts = np.array([t for t, _ in path])
    xs = np.array([s.x for _, s in path])
    assert np.max(np.abs(xs - trajectory(ClassicalOrbit(p, 1.0), ts)[0])) <= 1e-6


def test_rk4_blow_up_detected():
    # gamma A = 1.8 > 1: the orbit runs into x = -1/gamma
    p = ModelParams.from_gtilde(0.9)
    with pytest.raises(DomainError):
        rk4_oracle(p, ClassicalState(0.0, -2.0), 60.0, dt=0.01)


def test_equations_of_motion():
    for g in (0.2, 0.8):
        orbit = ClassicalOrbit(ModelParams.from_gtilde(g), 1.0)
        rx, rpi = equation_of_motion_residual(orbit, np.linspace(0, 3 * TAU0, 200))
        assert rx <= 1e-6 and rpi <= 1e-6


def test_poisson_bracket_of_alpha():
    p = ModelParams.from_gtilde(0.4)

    def re(x, mom):
        return alpha_of_state(p, x, mom).real

    def im(x, mom):
        return alpha_of_state(p, x, mom).imag

    x, mom = np.meshgrid(np.linspace(-2, 3, 9), np.linspace(-2, 2, 9))
    got = poisson_bracket(re, im, x, mom)
    np.testing.assert_allclose(got, (1 + p.gamma * x) / 2, atol=1e-7)


def test_jacobi_identity():
    p = ModelParams.from_gtilde(0.4)
    f = lambda x, q: alpha_of_state(p, x, q).real
    g = lambda x, q: alpha_of_state(p, x, q).imag
    h = lambda x, q: classical_energy(p, ClassicalState(x, q))
    pb = lambda a, b: (lambda x, q: poisson_bracket(a, b, x, q, h=1e-3))
    x, q = np.meshgrid(np.linspace(-1, 2, 5), np.linspace(-1, 1, 5))
    total = (poisson_bracket(f, pb(g, h), x, q, h=1e-3) + poisson_bracket(g, pb(h, f), x, q, h=1e-3)
             + poisson_bracket(h, pb(f, g), x, q, h=1e-3))
    assert np.max(np.abs(total)) <= 1e-4


def test_orbit_of_state_reproduces_state():
    p = ModelParams.from_gtilde(0.4)
    state = ClassicalState(0.3, -0.9)
    orbit = orbit_of_state(p, state)
    x, mom, _ = trajectory(orbit, 0.0)
    assert (x, mom) == pytest.approx((0.3, -0.9), abs=1e-12)


def test_gamma_to_zero_continuity():
    ts = np.linspace(0, TAU0, 400)
    x1 = trajectory(ClassicalOrbit(ModelParams.from_gtilde(1e-6), 1.0), ts)[0]
    assert np.max(np.abs(x1 - np.cos(ts))) <= 1e-5
