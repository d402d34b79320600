"""Coherent states of the deformed oscillator and their quasi-classical
evolution.

The annihilation eigenstate with label alpha is

    psi_cs = sqrt(gamma / Gamma(lam)) sqrt(2s) exp(-z/2) z^(s - 1 + sqrt(2s) alpha),
    lam = 2s [1 + sqrt(2) gamma sigma0 Re(alpha)] - 1,

and its density is the Gamma(lam) law in z. Under the Hamiltonian flow the
label moves as alpha(t) = |alpha| exp(-i Theta(t)) with
dTheta/dt = w0 (1 + gamma A cos(Theta) - (gamma sigma0)^2 / 2), A = sqrt(2) sigma0 |alpha|.
"""
import math
from dataclasses import dataclass

import numpy as np

from . import spectrum
from .classical import continuous_half_angle
from .core import WaveFn, default_grid
from .errors import DomainError, NormalizabilityError, RegimeError
from .numerics import ln_gamma


@dataclass(frozen=True)
class CoherentState:
    params: object
    alpha: complex

    def __post_init__(self):
        object.__setattr__(self, "alpha", complex(self.alpha))
        if self.params.gamma > 0 and not self.lambda_cs > 0:
            raise NormalizabilityError(
                f"lambda_cs = {self.lambda_cs:.6g} <= 0: state is not normalizable")

    @property
    def lambda_cs(self):
        p = self.params
        if p.gamma == 0:
            return math.inf
        return 2 * p.s * (1 + math.sqrt(2) * p.gtilde * self.alpha.real) - 1

    @property
    def exponent(self):
        """Complex power of z in psi_cs."""
        s = self.params.s
        return s - 1 + math.sqrt(2 * s) * self.alpha

    @property
    def amplitude(self):
        return math.sqrt(2) * self.params.sigma0 * abs(self.alpha)


@dataclass(frozen=True)
class EvolutionConfig:
    t_end: float
    samples: int = 201
    t0: float = 0.0

    def __post_init__(self):
        if not self.t_end > self.t0:
            raise DomainError("t_end must be > t0")
        if self.samples < 2:
            raise DomainError("samples must be >= 2")

    def times(self):
        return np.linspace(self.t0, self.t_end, self.samples)


def _gaussian_cs(state, x):
    """Undeformed coherent state, real-normalized phase convention."""
    s0 = state.params.sigma0
    u = np.asarray(x, dtype=float) / s0
    a = state.alpha
    return (np.pi ** -0.25 / math.sqrt(s0)
            * np.exp(-0.5 * u * u + math.sqrt(2) * a * u - a.real ** 2))


def _cs_of_z(state, z):
    p = state.params
    lam = state.lambda_cs
    logc = 0.5 * (math.log(p.gamma) - ln_gamma(lam) + math.log(2 * p.s))
    with np.errstate(divide="ignore"):
        logz = np.log(z)
    return np.exp(logc - 0.5 * z + state.exponent * logz)


def coherent_wavefunction(state, x):
    """psi_cs(x); exactly zero for x <= -1/gamma."""
    p = state.params
    if p.gamma == 0:
        return _gaussian_cs(state, x)
    x = np.asarray(x, dtype=float)
    out = np.zeros(x.shape, dtype=complex)
    inside = x > p.x_min
    out[inside] = _cs_of_z(state, p.z_of_x(x[inside]))
    return out if out.ndim else complex(out)


def coherent_on(grid, state):
    p = grid.params
    if p.gamma == 0:
        return WaveFn(grid, _gaussian_cs(state, grid.x).astype(complex))
    return WaveFn(grid, _cs_of_z(state, grid.z))


def perelomov_on(grid, state):
    """exp(sqrt2 alpha x_gamma / sigma0) psi_0, normalized on the grid."""
    p = grid.params
    xg = grid.x if p.gamma == 0 else p.xgamma_of_x(grid.x)
    vals = np.exp(math.sqrt(2) * state.alpha * xg / p.sigma0) * spectrum.eigenfunction_on(grid, 0).values
    wf = WaveFn(grid, vals)
    return wf * (1.0 / wf.norm())


def perelomov_wavefunction(state, x):
    """Perelomov form with the exact normalization of the Gamma(lam) law."""
    p = state.params
    x = np.asarray(x, dtype=float)
    if p.gamma == 0:
        return _gaussian_cs(state, x)
    out = np.zeros(x.shape, dtype=complex)
    inside = x > p.x_min
    xg = p.xgamma_of_x(x[inside])
    lam0 = spectrum.ground_shape(p)
    lam = state.lambda_cs
    # |exp(sqrt2 a xg/s0)|^2 psi0^2 integrates to (2s)^(lam0-lam) Gamma(lam)/Gamma(lam0)
    log_norm = 0.5 * ((lam0 - lam) * math.log(2 * p.s) + ln_gamma(lam) - ln_gamma(lam0))
    out[inside] = (np.exp(math.sqrt(2) * state.alpha * xg / p.sigma0 - log_norm)
                   * spectrum.eigenfunction(p, 0, x[inside]))
    return out if out.ndim else complex(out)


def coherent_density(state, x):
    """rho_cs = 2 exp(-z) z^(lam-1) / (gamma sigma0^2 Gamma(lam))."""
    p = state.params
    if p.gamma == 0:
        return np.abs(_gaussian_cs(state, x)) ** 2
    return spectrum._on_domain(p, x, lambda z: _gamma_density(p, state.lambda_cs, z))


def _gamma_density(params, lam, z):
    logc = math.log(2.0 / (params.gamma * params.sigma0 ** 2)) - ln_gamma(lam)
    with np.errstate(divide="ignore"):
        logz = np.log(z)
    return np.exp(logc - z + (lam - 1) * logz)


def coherent_grid(params, alpha_abs=0.0, re_max=None):
    """default_grid widened for every lam_cs reached by labels with |Re alpha| <= re_max."""
    if params.gamma == 0:
        return default_grid(params)
    r = alpha_abs if re_max is None else re_max
    lam_lo = 2 * params.s * (1 - math.sqrt(2) * params.gtilde * r) - 1
    lam_hi = 2 * params.s * (1 + math.sqrt(2) * params.gtilde * r) - 1
    if not lam_lo > 0:
        raise NormalizabilityError("some labels in range are not normalizable")
    base_lo = 2 * params.s - 2 * min(5, spectrum.max_bound_index(params)) - 1
    return default_grid(params, min_shape=min(lam_lo, base_lo),
                        max_shape=max(lam_hi, 2 * params.s * (1 + 6 * params.gtilde)))


# moments -------------------------------------------------------------------

def coherent_moments(state):
    """(<x>, <x^2>, <Pi>, <Pi^2>) from the closed forms."""
    p = state.params
    s0, g = p.sigma0, p.gtilde
    re, im = state.alpha.real, state.alpha.imag
    ex = math.sqrt(2) * s0 * re - 0.5 * p.gamma * s0 ** 2
    ex2 = 0.5 * s0 ** 2 * (1 + 4 * re * re - math.sqrt(2) * g * re)
    epi = math.sqrt(2) * p.hbar * im / s0
    epi2 = 0.5 * p.hbar ** 2 / s0 ** 2 * (1 + 4 * im * im + math.sqrt(2) * g * re - 0.5 * g * g)
    return ex, ex2, epi, epi2


def _p_denominators(state):
    g = state.params.gtilde
    d = 1 + math.sqrt(2) * g * state.alpha.real
    return d - g * g, d - 1.5 * g * g


def coherent_p_moments(state):
    """(<p>, <p^2>) for the canonical momentum p = -i hbar d/dx."""
    p = state.params
    d1, d2 = _p_denominators(state)
    if not (d1 > 0 and d2 > 0):
        raise DomainError(f"momentum moments need positive denominators, got {d1:.6g}, {d2:.6g}")
    im = state.alpha.imag
    unit = p.hbar / p.sigma0
    ep = math.sqrt(2) * unit * im / d1
    ep2 = 0.5 * unit ** 2 / d2 * (1 + 4 * im * im / d1)
    return ep, ep2


def uncertainties(state):
    """(dx, dPi, dp); dp is nan where <p^2> - <p>^2 is not positive or undefined."""
    ex, ex2, epi, epi2 = coherent_moments(state)
    dx = math.sqrt(ex2 - ex * ex)
    dpi = math.sqrt(epi2 - epi * epi)
    try:
        ep, ep2 = coherent_p_moments(state)
        var = ep2 - ep * ep
        dp = math.sqrt(var) if var > 0 else math.nan
    except DomainError:
        dp = math.nan
    return dx, dpi, dp


def gup_bound(state):
    """(hbar / 2)(1 + gamma <x>)."""
    return 0.5 * state.params.hbar * (1 + state.params.gamma * coherent_moments(state)[0])


def energy_expectation(state):
    """<H> = E_0 + hbar w0 |alpha|^2."""
    p = state.params
    return spectrum.energy(p, 0) + p.hbar * p.omega0 * abs(state.alpha) ** 2


# evolution -----------------------------------------------------------------

def phase_parameters(params, alpha_abs):
    """(A_cs, Omega_cs, kappa_cs) of the coherent phase law."""
    c = 1 - 0.5 * params.gtilde ** 2
    amp = math.sqrt(2) * params.sigma0 * alpha_abs
    rad = c * c - (params.gamma * amp) ** 2
    if not rad > 0 or c <= 0:
        raise RegimeError(
            f"(1 - (gamma sigma0)^2/2)^2 - gamma^2 A^2 = {rad:.6g} <= 0: no oscillatory phase")
    a_cs = amp / c
    ga = params.gamma * a_cs
    return a_cs, params.omega0 * math.sqrt(rad), math.sqrt((1 + ga) / (1 - ga))


def coherent_phase(params, alpha_abs, t, t0=0.0):
    """Theta(t), continuous and increasing, Theta(t0) = 0."""
    _, om, kap = phase_parameters(params, alpha_abs)
    th = continuous_half_angle(0.5 * om * (np.asarray(t, dtype=float) - t0), kap)
    return th if th.ndim else float(th)


def coherent_phase_time(params, alpha_abs, theta):
    """Inverse of coherent_phase with t0 = 0."""
    _, om, kap = phase_parameters(params, alpha_abs)
    t = continuous_half_angle(0.5 * np.asarray(theta, dtype=float), 1.0 / kap) / om
    return t if np.ndim(t) else float(t)


def coherent_period(params, alpha_abs):
    return 2 * math.pi / phase_parameters(params, alpha_abs)[1]


def label_at(state0, t, t0=0.0):
    """alpha(t) = |alpha| exp(-i Theta), with Theta starting at -arg(alpha0)."""
    r = abs(state0.alpha)
    if r == 0:
        return np.zeros(np.shape(t), dtype=complex) if np.ndim(t) else 0j
    shift = coherent_phase_time(state0.params, r, -math.atan2(state0.alpha.imag, state0.alpha.real))
    th = coherent_phase(state0.params, r, np.asarray(t, dtype=float) - t0 + shift)
    return r * np.exp(-1j * np.asarray(th))


def evolve(state0, cfg):
    """[(t, CoherentState(alpha(t)), -E0 (t - t0)/hbar)] at the sampled times."""
    p = state0.params
    ts = cfg.times()
    r = abs(state0.alpha)
    phase_parameters(p, r)
    labels = np.atleast_1d(label_at(state0, ts, cfg.t0))
    e0 = spectrum.energy(p, 0)
    out = []
    for t, a in zip(ts, labels):
        # keep |alpha| exact: rebuild from modulus and angle
        a = r * np.exp(1j * np.angle(a)) if r else 0j
        out.append((float(t), CoherentState(p, a), -e0 * (t - cfg.t0) / p.hbar))
    return out


def expected_trajectory(params, alpha_abs, t, t0=0.0):
    """(<x>, <Pi>, <p>) along the orbit of a label starting real and positive."""
    a_amp = math.sqrt(2) * params.sigma0 * alpha_abs
    th = np.asarray(coherent_phase(params, alpha_abs, t, t0))
    g2 = params.gtilde ** 2
    ex = a_amp * np.cos(th) - 0.5 * params.gamma * params.sigma0 ** 2
    epi = -params.m0 * params.omega0 * a_amp * np.sin(th)
    den = 1 + params.gamma * a_amp * np.cos(th) - g2
    if np.any(den <= 0):
        raise DomainError("<p> denominator 1 + gamma A cos(Theta) - (gamma sigma0)^2 <= 0")
    ep = epi / den
    if th.ndim == 0:
        return float(ex), float(epi), float(ep)
    return ex, epi, ep


def density_evolution(state0, cfg, grid):
    """|psi_cs(x; alpha(t))|^2 on the grid, one row per sampled time."""
    p = grid.params
    if not p == state0.params:
        raise DomainError("grid and state use different parameters")
    rows = []
    for _, st, _ in evolve(state0, cfg):
        if p.gamma == 0:
            rows.append(np.abs(_gaussian_cs(st, grid.x)) ** 2)
        else:
            rows.append(_gamma_density(p, st.lambda_cs, grid.z))
    return np.array(rows)


def gup_surface(params, re_range=(-2.0, 2.0), im_range=(-2.0, 2.0), resolution=41):
    """Closed-form uncertainties on a resolution x resolution grid of alpha.

    Returns a dict of 2-D arrays indexed [im, re]: re, im, dx, dp, dxdp,
    dpi, gup_ratio and valid. Cells with lam_cs <= 0, a nonpositive
    momentum denominator or a negative momentum variance are marked
    invalid and carry nan.
    """
    re = np.linspace(re_range[0], re_range[1], resolution)
    im = np.linspace(im_range[0], im_range[1], resolution)
    shape = (resolution, resolution)
    out = {k: np.full(shape, np.nan) for k in ("dx", "dp", "dxdp", "dpi", "gup_ratio")}
    valid = np.zeros(shape, dtype=bool)
    for i, b in enumerate(im):
        for j, a in enumerate(re):
            try:
                st = CoherentState(params, complex(a, b))
            except NormalizabilityError:
                continue
            dx, dpi, dp = uncertainties(st)
            out["dx"][i, j] = dx
            out["dpi"][i, j] = dpi
            out["gup_ratio"][i, j] = dx * dpi / gup_bound(st)
            if math.isnan(dp):
                continue
            out["dp"][i, j] = dp
            out["dxdp"][i, j] = dx * dp
            valid[i, j] = True
    re_g, im_g = np.meshgrid(re, im)
    out.update(re=re_g, im=im_g, valid=valid)
    return out


def uncertainty_timeseries(params, alpha_abs, cfg):
    """Columns t, dx, dp, dxdp, dpi, gup_ratio along the evolved label."""
    cols = {k: [] for k in ("t", "dx", "dp", "dxdp", "dpi", "gup_ratio")}
    for t, st, _ in evolve(CoherentState(params, alpha_abs), cfg):
        dx, dpi, dp = uncertainties(st)
        cols["t"].append(t)
        cols["dx"].append(dx)
        cols["dp"].append(dp)
        cols["dxdp"].append(dx * dp)
        cols["dpi"].append(dpi)
        cols["gup_ratio"].append(dx * dpi / gup_bound(st))
    return {k: np.array(v) for k, v in cols.items()}
