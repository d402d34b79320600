"""Exact bound states of the oscillator with mass m(x) = m0 / (1 + gamma x)^2.

In z = 2 s (1 + gamma x) the eigenfunctions are Laguerre functions,

    psi_n(x) = (-1)^n N_n sqrt(2s) exp(-z/2) z^((nu_n - 1)/2) L_n^(nu_n)(z),
    nu_n = 2s - 2n - 1,   N_n^2 = nu_n gamma n! / Gamma(nu_n + n + 1),

and the spectrum is E_n = hbar w0 (n + 1/2) - hbar^2 gamma^2 (n + 1/2)^2 / 2 m0.
At gamma = 0 everything falls back to Hermite functions.
"""
import math
from dataclasses import dataclass

import numpy as np

from .core import Convention, WaveFn
from .errors import BoundStateError, DomainError
from .numerics import assoc_laguerre, ln_gamma


@dataclass(frozen=True)
class QuantumLevel:
    n: int
    params: object

    def __post_init__(self):
        self.params.require_level(self.n)

    @property
    def nu(self):
        return 2 * self.params.s - 2 * self.n - 1

    @property
    def norm_sq(self):
        return math.exp(log_norm_sq(self.params, self.n, self.nu))

    def z_of_x(self, x):
        return self.params.z_of_x(x)


def log_norm_sq(params, n, mu):
    """ln of mu gamma n! / Gamma(mu + n + 1)."""
    if not mu > 0:
        raise BoundStateError(f"Laguerre index must be > 0, got {mu}")
    return (math.log(mu) + math.log(params.gamma) + ln_gamma(n + 1)
            - ln_gamma(mu + n + 1))


def laguerre_state_z(params, n, mu, z):
    """(-1)^n sqrt(2s) N exp(-z/2) z^((mu-1)/2) L_n^(mu)(z), normalized in dx.

    This single family covers psi_n (mu = nu_n), the partner states
    psi_n^(-) (mu = 2s - 2n - 3) and the shape-invariant states
    psi_{n,beta} (mu = nu_n + 1 - beta).
    """
    z = np.asarray(z, dtype=float)
    logpref = 0.5 * (log_norm_sq(params, n, mu) + math.log(2 * params.s))
    with np.errstate(divide="ignore"):
        logz = np.log(z)
    envelope = np.exp(logpref - 0.5 * z + 0.5 * (mu - 1) * logz)
    return (-1) ** n * envelope * assoc_laguerre(n, mu, z)


def hermite_function(n, x, sigma0=1.0):
    """Normalized oscillator eigenfunction with positive leading coefficient."""
    u = np.asarray(x, dtype=float) / sigma0
    prev = np.pi ** -0.25 * np.exp(-0.5 * u * u) / math.sqrt(sigma0)
    if n == 0:
        return prev
    cur = math.sqrt(2.0) * u * prev
    for k in range(1, n):
        prev, cur = cur, (math.sqrt(2.0 / (k + 1)) * u * cur
                          - math.sqrt(k / (k + 1)) * prev)
    return cur


def _on_domain(params, x, func_z):
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    inside = x > params.x_min
    out[inside] = func_z(params.z_of_x(x[inside]))
    return out if out.ndim else float(out)


def max_bound_index(params):
    """Largest n with 2s - 2n - 1 > 0; math.inf when gamma = 0."""
    if params.gamma == 0:
        return math.inf
    s = params.s
    if not s > 0.5:
        raise BoundStateError(f"no bound states: s = {s:.6g} <= 1/2")
    n = math.ceil(s - 0.5) - 1
    while 2 * s - 2 * (n + 1) - 1 > 0:
        n += 1
    while n > 0 and not 2 * s - 2 * n - 1 > 0:
        n -= 1
    return n


def energy(params, n):
    params.require_level(n)
    k = n + 0.5
    return (params.hbar * params.omega0 * k
            - params.hbar ** 2 * params.gamma ** 2 * k * k / (2 * params.m0))


def eigenfunction(params, n, x):
    """psi_n(x); exactly zero for x <= -1/gamma."""
    params.require_level(n)
    if params.gamma == 0:
        return hermite_function(n, x, params.sigma0)
    nu = 2 * params.s - 2 * n - 1
    return _on_domain(params, x, lambda z: laguerre_state_z(params, n, nu, z))


def eigenfunction_on(grid, n, convention=Convention.PSI):
    """psi_n sampled on a grid (z taken from the grid without cancellation)."""
    params = grid.params
    params.require_level(n)
    if params.gamma == 0:
        vals = hermite_function(n, grid.x, params.sigma0)
    else:
        vals = laguerre_state_z(params, n, 2 * params.s - 2 * n - 1, grid.z)
    wf = WaveFn(grid, vals)
    return wf.to_phi() if convention is Convention.PHI else wf


def ground_density(params, x):
    """Gamma-distribution density rho_0 = 2 e^-z z^(lam-1) / (gamma sigma0^2 Gamma(lam))."""
    if params.gamma == 0:
        return hermite_function(0, x, params.sigma0) ** 2
    lam = 2.0 / params.gtilde ** 2 - 1.0
    if not lam > 0:
        raise DomainError(f"ground density needs lambda > 0, got {lam}")
    logc = math.log(2.0 / (params.gamma * params.sigma0 ** 2)) - ln_gamma(lam)

    def rho(z):
        return np.exp(logc - z + (lam - 1) * np.log(z))

    return _on_domain(params, x, rho)


def ground_shape(params):
    """Shape parameter lambda = 2/(gamma sigma0)^2 - 1 of rho_0."""
    return 2.0 / params.gtilde ** 2 - 1.0


def moments(params, n):
    """(<x>, <x^2>, <Pi>, <Pi^2>) in the n-th eigenstate."""
    params.require_level(n)
    k = n + 0.5
    sig2 = params.sigma0 ** 2
    ex = -params.gamma * sig2 * k
    ex2 = sig2 * k
    epi2 = params.hbar ** 2 / sig2 * k * (1 - params.gtilde ** 2 * k)
    return ex, ex2, 0.0, epi2


def uncertainty_product(params, n):
    """Delta x Delta Pi_gamma = hbar (n + 1/2) (1 + gamma <x>)."""
    ex, ex2, epi, epi2 = moments(params, n)
    return math.sqrt((ex2 - ex * ex) * (epi2 - epi * epi))


def gup_bound(params, n):
    ex = moments(params, n)[0]
    return 0.5 * params.hbar * (1 + params.gamma * ex)


def number_expectation(params, n):
    """<a^dagger a> = n [1 - (gamma sigma0)^2 (n + 1) / 2]."""
    params.require_level(n)
    return n * (1 - 0.5 * params.gtilde ** 2 * (n + 1))


def count_nodes(values, rel_floor=1e-8):
    """Sign changes of a real sampled function, ignoring its negligible tails."""
    v = np.asarray(values, dtype=float)
    v = v[np.abs(v) > rel_floor * np.max(np.abs(v))]
    return int(np.count_nonzero(np.diff(np.sign(v)) != 0))
