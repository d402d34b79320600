"""Independent numeric checks: a finite-difference eigensolver for the
constant-mass Morse form of the model, and quadrature expectation values
on sampled wavefunctions.

In x_gamma the eigenproblem for phi = sqrt(1 + gamma x) psi reads

    -hbar^2/2m0 phi'' + W (exp(gamma x_g) - 1)^2 phi = E phi,
    W = m0 w0^2 / 2 gamma^2,

which is discretized with the 3-point Laplacian and Dirichlet ends.
"""
import enum
import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import spectrum
from .classical import morse_params
from .core import Convention, Coordinate, Grid, Source, SpectrumResult, WaveFn, integrate
from .errors import DomainError, GridError
from .numerics import tridiag_lowest_eigen
from .susy import apply_p, apply_pi

REFERENCE_SPACING = 0.003
PLATEAU_MARGIN = 1e-6


class Variant(enum.Enum):
    BASE = "base"
    PARTNER_MINUS = "partner_minus"


class Observable(enum.Enum):
    X = "x"
    X2 = "x2"
    PI = "pi"
    PI2 = "pi2"
    P = "p"
    P2 = "p2"


@dataclass(frozen=True)
class FdConfig:
    """Domain [-L_left, L_right] in x_gamma (units of sigma0)."""
    L_left: float = 8.0
    L_right: float = 16.0
    n_points: int = 8001
    k_states: int = 6
    richardson: bool = True

    def __post_init__(self):
        if not (self.L_left > 0 and self.L_right > 0):
            raise DomainError("L_left and L_right must be > 0")
        if self.n_points < 201 or self.n_points % 2 == 0:
            raise GridError("n_points must be odd and >= 201")
        if self.k_states < 1:
            raise DomainError("k_states must be >= 1")


def _plateau_decay(params, energy, plateau):
    """Left-tail decay rate sqrt(2 m0 (plateau - E)) / hbar, in 1/sigma0."""
    gap = plateau - energy
    if gap <= 0:
        return 0.0
    return math.sqrt(2 * params.m0 * gap) / params.hbar * params.sigma0


def reference_config(params, variant=Variant.BASE, k_states=None):
    """Configuration reaching 1e-6 relative accuracy for the bound states.

    The left edge is pushed out until the slowest left tail has decayed by
    e^-40, the spacing is 0.003 sigma0 and Richardson extrapolation is on.
    """
    if params.gamma == 0:
        raise DomainError("the Morse oracle needs gamma > 0")
    n_max = spectrum.max_bound_index(params)
    if variant is Variant.PARTNER_MINUS:
        n_max = n_max - 1
        if n_max < 0:
            raise DomainError("the partner has no bound states")
    k = min(6, n_max + 1) if k_states is None else k_states
    top = min(k - 1, n_max)
    mp = morse_params(params)
    if variant is Variant.BASE:
        kappa = _plateau_decay(params, spectrum.energy(params, top), mp.W)
    else:
        kappa = _plateau_decay(params, _partner_raw_energy(params, top), mp.W_tilde)
    left = 8.0 if kappa == 0 else max(8.0, 40.0 / kappa)
    right = 16.0
    n = int(round((left + right) / REFERENCE_SPACING)) | 1
    return FdConfig(left, right, max(n, 201), k)


def _partner_raw_energy(params, n):
    """Morse eigenvalue eps_n + hbar^2 gamma^2 / 2 m0 of the partner equation."""
    hw = params.hbar * params.omega0
    e_minus = spectrum.energy(params, n + 1) - spectrum.energy(params, 0)
    eps = e_minus - hw + spectrum.energy(params, 0)
    return eps + params.hbar ** 2 * params.gamma ** 2 / (2 * params.m0)


def _potential(params, variant, xg):
    mp = morse_params(params)
    g = params.gamma
    if variant is Variant.BASE:
        return mp.W * np.expm1(g * xg) ** 2, mp.W
    if math.isnan(mp.delta):
        raise DomainError("partner Morse form needs (gamma sigma0)^2 < 1")
    return mp.W_tilde * np.expm1(g * (xg - mp.delta)) ** 2, mp.W_tilde


def _solve_once(params, variant, left, right, n_points, k, vectors):
    s0 = params.sigma0
    xg = np.linspace(-left * s0, right * s0, n_points)
    h = xg[1] - xg[0]
    inner = xg[1:-1]
    u, plateau = _potential(params, variant, inner)
    kin = params.hbar ** 2 / (2 * params.m0 * h * h)
    k = min(k, inner.size)
    out = tridiag_lowest_eigen(2 * kin + u, np.full(inner.size - 1, -kin), k, vectors=vectors)
    return xg, plateau, out


def solve_morse_fd(params, variant=Variant.BASE, cfg=None, vectors=False):
    """Lowest eigenvalues of the Morse form by 3-point finite differences.

    With cfg.richardson the result is (4 E(h/2) - E(h)) / 3. BASE entries are
    E_n; PARTNER_MINUS entries are converted to E_n^(-) through
    eps_n = E_n^(-) - hw + E_0 and the Morse eigenvalue eps_n + hbar^2 gamma^2/2m0.
    Only eigenvalues at least 1e-6 (relative) below the plateau are kept.
    """
    if params.gamma == 0:
        raise DomainError("the Morse oracle needs gamma > 0")
    cfg = reference_config(params, variant) if cfg is None else cfg
    want_vec = vectors
    xg, plateau, coarse = _solve_once(params, variant, cfg.L_left, cfg.L_right,
                                      cfg.n_points, cfg.k_states, want_vec and not cfg.richardson)
    raw = coarse[0] if isinstance(coarse, tuple) else coarse
    vecs = coarse[1] if isinstance(coarse, tuple) else None
    meta = {"variant": variant.value, "L_left": cfg.L_left, "L_right": cfg.L_right,
            "n_points": cfg.n_points, "richardson": cfg.richardson, "plateau": plateau}
    if cfg.richardson:
        xg, _, fine = _solve_once(params, variant, cfg.L_left, cfg.L_right,
                                  2 * cfg.n_points - 1, cfg.k_states, want_vec)
        fine_vals = fine[0] if isinstance(fine, tuple) else fine
        vecs = fine[1] if isinstance(fine, tuple) else None
        meta["coarse"] = raw.tolist()
        meta["fine"] = fine_vals.tolist()
        raw = (4 * fine_vals - raw) / 3
    bound = raw < plateau * (1 - PLATEAU_MARGIN)
    if not np.all(bound):
        warnings.warn(f"only {int(bound.sum())} of {cfg.k_states} requested states are bound",
                      RuntimeWarning, stacklevel=2)
    raw = raw[bound]
    if variant is Variant.PARTNER_MINUS:
        hw = params.hbar * params.omega0
        e0 = spectrum.energy(params, 0)
        energies = raw - params.hbar ** 2 * params.gamma ** 2 / (2 * params.m0) + hw - e0
    else:
        energies = raw
    result = SpectrumResult([(n, float(e), Source.ORACLE) for n, e in enumerate(energies)], meta)
    if want_vec and vecs is not None:
        grid = Grid(Coordinate.XGAMMA, xg, params)
        waves = []
        for j in range(len(energies)):
            v = np.zeros(xg.size)
            v[1:-1] = vecs[:, j]
            wf = WaveFn(grid, v, Convention.PHI)
            wf = wf * (1.0 / wf.norm())
            # analytic states are positive in the right tail
            tail = np.nonzero(np.abs(v) > 1e-3 * np.max(np.abs(v)))[0][-1]
            wf = wf * (1.0 if v[tail] > 0 else -1.0)
            waves.append(wf)
        result.vectors = waves
    return result


def convergence_ratio(params, variant=Variant.BASE, k_states=3, n_points=2001, L_left=None,
                      L_right=16.0):
    """Error ratios E(h) - E_exact over E(h/2) - E_exact for the lowest states."""
    cfg = reference_config(params, variant, k_states)
    left = cfg.L_left if L_left is None else L_left
    e1 = _solve_once(params, variant, left, L_right, n_points, k_states, False)[2]
    e2 = _solve_once(params, variant, left, L_right, 2 * n_points - 1, k_states, False)[2]
    if variant is Variant.BASE:
        exact = np.array([spectrum.energy(params, n) for n in range(k_states)])
    else:
        exact = np.array([_partner_raw_energy(params, n) for n in range(k_states)])
    return (e1 - exact) / (e2 - exact)


def inner_product(f, g):
    """<f, g> with conjugation on f; plain dx for PSI, deformed measure for PHI."""
    if not f.grid.same_as(g.grid):
        raise GridError("inner product needs a common grid")
    if f.convention is not g.convention:
        raise DomainError("inner product needs a common density convention")
    return complex(integrate(f.grid, np.conj(f.values) * g.values, f.convention))


def expectation_quadrature(psi, observable):
    """<psi| O |psi> by trapezoid quadrature and 4th-order stencils."""
    f = psi.to_psi()
    params = f.grid.params
    x = f.grid.x
    if observable is Observable.X:
        gv = x * f.values
    elif observable is Observable.X2:
        gv = x * x * f.values
    elif observable is Observable.PI:
        gv = apply_pi(params, f).values
    elif observable is Observable.PI2:
        gv = apply_pi(params, f).values
        return complex(integrate(f.grid, np.abs(gv) ** 2))
    elif observable is Observable.P:
        gv = apply_p(params, f).values
    elif observable is Observable.P2:
        gv = apply_p(params, f).values
        return complex(integrate(f.grid, np.abs(gv) ** 2))
    else:
        raise ValueError(f"unknown observable {observable!r}")
    return complex(integrate(f.grid, np.conj(f.values) * gv))
