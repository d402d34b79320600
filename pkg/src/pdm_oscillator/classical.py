"""Classical dynamics of the oscillator with Hamiltonian

    H(x, p) = (1 + gamma x)^2 p^2 / 2 m0 + m0 w0^2 x^2 / 2.

The exact solution is x = A cos(theta), Pi = (1 + gamma x) p = -m0 w0 A sin(theta)
with the deformed phase obeying d(theta)/dt = w0 (1 + gamma A cos(theta)).
"""
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, RegimeError


@dataclass(frozen=True)
class ClassicalState:
    x: float
    p: float


@dataclass(frozen=True)
class ClassicalOrbit:
    """Bound orbit of amplitude A with theta(t0) = 0."""
    params: object
    amplitude: float
    t0: float = 0.0
    omega: float = field(init=False)

    def __post_init__(self):
        if self.amplitude < 0:
            raise DomainError("amplitude must be >= 0")
        object.__setattr__(self, "omega", orbit_frequency(self.params, self.amplitude))

    @property
    def kappa(self):
        ga = self.params.gamma * self.amplitude
        return math.sqrt((1 + ga) / (1 - ga))

    @property
    def period(self):
        return 2 * math.pi / self.omega


@dataclass(frozen=True)
class MorseParams:
    W: float
    kappa: float
    W_tilde: float = math.nan
    omega_small: float = math.nan
    delta: float = math.nan


def _require_state(params, x):
    if params.gamma > 0 and np.any(np.asarray(x) <= params.x_min):
        raise DomainError("x must be > -1/gamma")


def orbit_frequency(params, amplitude):
    """Omega_gamma = w0 sqrt(1 - gamma^2 A^2)."""
    ga2 = (params.gamma * amplitude) ** 2
    if ga2 >= 1:
        raise RegimeError(f"gamma^2 A^2 = {ga2:.6g} >= 1: no oscillatory orbit")
    return params.omega0 * math.sqrt(1 - ga2)


def continuous_half_angle(u, kappa):
    """2[arctan(kappa tan(u - k pi)) + k pi] with k = round(u / pi).

    Continuous and increasing in u: the tan half-angle solution without
    branch jumps at the poles of tan.
    """
    u = np.asarray(u, dtype=float)
    k = np.round(u / np.pi)
    return 2 * (np.arctan(kappa * np.tan(u - k * np.pi)) + k * np.pi)


def deformed_phase(orbit, t):
    """theta_gamma(t), continuous and monotone, theta(t0) = 0."""
    u = 0.5 * orbit.omega * (np.asarray(t, dtype=float) - orbit.t0)
    th = continuous_half_angle(u, orbit.kappa)
    return th if th.ndim else float(th)


def phase_time(orbit, theta):
    """Inverse of deformed_phase: the time at which the phase equals theta."""
    u = continuous_half_angle(0.5 * np.asarray(theta, dtype=float), 1.0 / orbit.kappa)
    t = orbit.t0 + u / orbit.omega
    return t if np.ndim(t) else float(t)


def trajectory(orbit, t):
    """(x, p, Pi_gamma) at time(s) t."""
    p_ = orbit.params
    th = np.asarray(deformed_phase(orbit, t))
    x = orbit.amplitude * np.cos(th)
    pi = -p_.m0 * p_.omega0 * orbit.amplitude * np.sin(th)
    mom = pi / (1 + p_.gamma * x)
    if th.ndim == 0:
        return float(x), float(mom), float(pi)
    return x, mom, pi


def classical_energy(params, state):
    x, p = np.asarray(state.x), np.asarray(state.p)
    _require_state(params, x)
    e = ((1 + params.gamma * x) ** 2 * p ** 2 / (2 * params.m0)
         + 0.5 * params.m0 * params.omega0 ** 2 * x ** 2)
    return e if e.ndim else float(e)


def amplitude_of_energy(params, energy):
    """A = sqrt(2 E / m0 w0^2)."""
    if energy < 0:
        raise DomainError("energy must be >= 0")
    return math.sqrt(2 * energy / (params.m0 * params.omega0 ** 2))


def canonical_map(params, state):
    """(x, p) -> (x_gamma, Pi_gamma) = (ln(1 + gamma x)/gamma, (1 + gamma x) p)."""
    _require_state(params, state.x)
    if params.gamma == 0:
        return state.x, state.p
    return params.xgamma_of_x(state.x), (1 + params.gamma * np.asarray(state.x)) * state.p


def canonical_map_inverse(params, x_gamma, pi_gamma):
    if params.gamma == 0:
        return ClassicalState(x_gamma, pi_gamma)
    x = params.x_of_xgamma(x_gamma)
    return ClassicalState(x, pi_gamma / (1 + params.gamma * np.asarray(x)))


def morse_params(params):
    """Morse image K = Pi^2/2m0 + W (exp(gamma x_g) - 1)^2 and its field-shifted partner."""
    g = params.gamma
    if g == 0:
        raise DomainError("gamma = 0 has no Morse image")
    w = params.m0 * params.omega0 ** 2 / (2 * g * g)
    g2 = params.gtilde ** 2
    if g2 >= 1:
        return MorseParams(w, -g)
    om = params.omega0 * (1 - g2)
    return MorseParams(w, -g, params.m0 * om ** 2 / (2 * g * g), om, math.log1p(-g2) / g)


def morse_trajectory(orbit, t):
    """(x_gamma, Pi_gamma) of the Morse image."""
    x, _, pi = trajectory(orbit, t)
    g = orbit.params.gamma
    if g == 0:
        return x, pi
    return np.log1p(g * np.asarray(x)) / g, pi


def hamilton_rhs(params, x, p):
    w = 1 + params.gamma * x
    dx = w * w * p / params.m0
    dp = -params.gamma * w * p * p / params.m0 - params.m0 * params.omega0 ** 2 * x
    return dx, dp


def rk4_oracle(params, state0, t_end, dt=None):
    """Fixed-step RK4 integration of Hamilton's equations; list of (t, ClassicalState).

    dt defaults to tau0 / 2000 with tau0 = 2 pi / w0. The last step is
    shortened to land on t_end exactly.
    """
    if dt is None:
        dt = 2 * math.pi / params.omega0 / 2000
    if not dt > 0:
        raise DomainError("dt must be > 0")
    if t_end < 0:
        raise DomainError("t_end must be >= 0")
    _require_state(params, state0.x)
    x, p = float(state0.x), float(state0.p)
    out = [(0.0, ClassicalState(x, p))]
    steps = int(math.ceil(t_end / dt - 1e-9))
    for i in range(steps):
        t = i * dt
        h = min(dt, t_end - t)
        k1 = hamilton_rhs(params, x, p)
        k2 = hamilton_rhs(params, x + 0.5 * h * k1[0], p + 0.5 * h * k1[1])
        k3 = hamilton_rhs(params, x + 0.5 * h * k2[0], p + 0.5 * h * k2[1])
        k4 = hamilton_rhs(params, x + h * k3[0], p + h * k3[1])
        x += h / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0])
        p += h / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])
        if params.gamma > 0 and not (1 + params.gamma * x) > np.finfo(float).eps:
            raise DomainError(f"orbit reached x <= -1/gamma at t = {t + h:.6g}")
        out.append((t + h, ClassicalState(x, p)))
    return out


def alpha_of_state(params, x, p):
    """Classical alpha_gamma = x / (sqrt2 sigma0) + i sigma0 Pi_gamma / (sqrt2 hbar)."""
    s0 = params.sigma0
    pi = (1 + params.gamma * np.asarray(x)) * p
    return (np.asarray(x) / s0 + 1j * s0 * pi / params.hbar) / math.sqrt(2)


def orbit_of_state(params, state):
    """The orbit through `state` at t = 0 (t0 chosen so theta(0) matches)."""
    _, pi = canonical_map(params, state)
    a = math.hypot(state.x, pi / (params.m0 * params.omega0))
    orbit = ClassicalOrbit(params, a)
    theta0 = math.atan2(-pi / (params.m0 * params.omega0), state.x)
    return ClassicalOrbit(params, a, t0=-phase_time(orbit, theta0))


def poisson_bracket(f, g, x, p, h=1e-5):
    """{f, g} = f_x g_p - f_p g_x by central differences at the points (x, p)."""
    fx = (f(x + h, p) - f(x - h, p)) / (2 * h)
    fp = (f(x, p + h) - f(x, p - h)) / (2 * h)
    gx = (g(x + h, p) - g(x - h, p)) / (2 * h)
    gp = (g(x, p + h) - g(x, p - h)) / (2 * h)
    return fx * gp - fp * gx


def equation_of_motion_residual(orbit, t, h=1e-4):
    """Max residuals of D x = (sigma0^2/hbar) Pi and D Pi = -(hbar/sigma0^2) x,

    with D = (1 / (w0 (1 + gamma x))) d/dt in units of w0 t, the time
    derivative taken by central differences of step h.
    """
    prm = orbit.params
    t = np.asarray(t, dtype=float)
    xp, _, pip = trajectory(orbit, t + h)
    xm, _, pim = trajectory(orbit, t - h)
    x, _, pi = trajectory(orbit, t)
    scale = prm.omega0 * (1 + prm.gamma * x)
    dx = (xp - xm) / (2 * h) / scale
    dpi = (pip - pim) / (2 * h) / scale
    s2 = prm.sigma0 ** 2
    return (float(np.max(np.abs(dx - s2 / prm.hbar * pi))),
            float(np.max(np.abs(dpi + prm.hbar / s2 * x))))
