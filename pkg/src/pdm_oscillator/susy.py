"""Supersymmetric factorization, partner Hamiltonians, shape invariance
and ladder operators of the deformed oscillator.

Operators act on sampled wavefunctions (PSI convention) through 4th-order
stencils in the deformed derivative D = (1 + gamma x) d/dx:

    a(beta)      = [x + (beta + 1) gamma sigma0^2 / 2 + sigma0^2 D] / (sqrt(2) sigma0)
    a^+(beta)    = [x + (beta - 1) gamma sigma0^2 / 2 - sigma0^2 D] / (sqrt(2) sigma0)
    Pi_gamma     = -i hbar (D + gamma / 2)

beta = 1 gives the intertwining pair of the original Hamiltonian.
"""
import enum
import math

import numpy as np

from . import spectrum
from .core import Convention, WaveFn, deformed_derivative, deformed_second_derivative
from .errors import BoundStateError, DomainError, GridError
from .numerics import assoc_laguerre, integrate_gamma_like

ETA = 2


class Side(enum.Enum):
    PLUS = "+"
    MINUS = "-"


class Direction(enum.Enum):
    UP = "up"
    DOWN = "down"


def _psi_values(f, params=None):
    if params is not None and f.grid.params != params:
        raise GridError("wavefunction grid was built for different parameters")
    f.grid.require_stencil()
    return f.to_psi().values


def _wrap(f, values):
    return WaveFn(f.grid, values, Convention.PSI)


def apply_annihilation(params, beta, f):
    v = _psi_values(f, params)
    g = f.grid
    s0 = params.sigma0
    out = (g.x + 0.5 * (beta + 1) * params.gamma * s0 ** 2) * v + s0 ** 2 * deformed_derivative(g, v)
    return _wrap(f, out / (math.sqrt(2) * s0))


def apply_creation(params, beta, f):
    v = _psi_values(f, params)
    g = f.grid
    s0 = params.sigma0
    out = (g.x + 0.5 * (beta - 1) * params.gamma * s0 ** 2) * v - s0 ** 2 * deformed_derivative(g, v)
    return _wrap(f, out / (math.sqrt(2) * s0))


def apply_pi(params, f):
    """Pseudo-momentum (1+gx)^(1/2) p (1+gx)^(1/2) = -i hbar (D + gamma/2)."""
    v = _psi_values(f, params)
    return _wrap(f, -1j * params.hbar * (deformed_derivative(f.grid, v) + 0.5 * params.gamma * v))


def apply_pi_squared(params, f):
    v = _psi_values(f, params)
    g = params.gamma
    d1 = deformed_derivative(f.grid, v)
    d2 = deformed_second_derivative(f.grid, v)
    return _wrap(f, -params.hbar ** 2 * (d2 + g * d1 + 0.25 * g * g * v))


def apply_p(params, f):
    """Canonical momentum -i hbar d/dx."""
    v = _psi_values(f, params)
    return _wrap(f, -1j * params.hbar * deformed_derivative(f.grid, v) / f.grid.weight)


def apply_x(params, f):
    return _wrap(f, f.grid.x * _psi_values(f, params))


def apply_hamiltonian(params, f, potential=None):
    """Pi^2 / 2 m0 + V(x) with V the oscillator potential unless given."""
    x = f.grid.x
    pot = 0.5 * params.m0 * params.omega0 ** 2 * x ** 2 if potential is None else potential(x)
    kin = apply_pi_squared(params, f).values / (2 * params.m0)
    return _wrap(f, kin + pot * _psi_values(f, params))


def apply_partner_hamiltonian(params, side, f, beta=1.0):
    """H_+(beta) = hw a^+ a and H_-(beta) = hw a a^+ as composed operator actions."""
    hw = params.hbar * params.omega0
    if side is Side.PLUS:
        return hw * apply_creation(params, beta, apply_annihilation(params, beta, f))
    return hw * apply_annihilation(params, beta, apply_creation(params, beta, f))


def commutator(op_a, op_b, f):
    return op_a(op_b(f)) - op_b(op_a(f))


# partner pair ----------------------------------------------------------------

def partner_potential(params, side, x, beta=1.0):
    """V_+/- (x, beta); beta = 1 gives V_+ = V - E0 and V_- = V_+ + hw (1 + gamma x)."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= params.x_min):
        raise DomainError("x must be > -1/gamma")
    hw = params.hbar * params.omega0
    v = 0.5 * params.m0 * params.omega0 ** 2 * x ** 2
    shift = beta ** 2 * params.hbar ** 2 * params.gamma ** 2 / (8 * params.m0)
    if side is Side.PLUS:
        out = v - 0.5 * hw * (1 + (1 - beta) * params.gamma * x) + shift
    else:
        out = v + 0.5 * hw * (1 + (1 + beta) * params.gamma * x) + shift
    return out if out.ndim else float(out)


def partner_energy(params, n, side):
    """E_n^(+) = E_n - E_0 and E_n^(-) = E_(n+1)^(+)."""
    if side is Side.PLUS:
        params.require_level(n)
        return spectrum.energy(params, n) - spectrum.energy(params, 0)
    params.require_level(n, shift=3)
    return spectrum.energy(params, n + 1) - spectrum.energy(params, 0)


def partner_nu_minus(params, n):
    return 2 * params.s - 2 * n - 3


def partner_eigenfunction_minus(params, n, x):
    params.require_level(n, shift=3)
    if params.gamma == 0:
        return spectrum.hermite_function(n, x, params.sigma0)
    nu = partner_nu_minus(params, n)
    return spectrum._on_domain(params, x, lambda z: spectrum.laguerre_state_z(params, n, nu, z))


def partner_eigenfunction_minus_on(grid, n):
    params = grid.params
    params.require_level(n, shift=3)
    if params.gamma == 0:
        return WaveFn(grid, spectrum.hermite_function(n, grid.x, params.sigma0))
    return WaveFn(grid, spectrum.laguerre_state_z(params, n, partner_nu_minus(params, n), grid.z))


def field_equation_residual(params, n, grid):
    """Relative L2 residual of the deformed equation with the uniform-field term,

    -hbar^2/2m0 D^2 phi + (m0 w0^2 x^2 / 2 + hbar w0 gamma x) phi = eps_n phi,
    eps_n = E_n^(-) - hbar w0 + E_0.
    """
    phi = partner_eigenfunction_minus_on(grid, n).to_phi()
    hw = params.hbar * params.omega0
    eps = partner_energy(params, n, Side.MINUS) - hw + spectrum.energy(params, 0)
    x = grid.x
    lhs = (-params.hbar ** 2 / (2 * params.m0) * deformed_second_derivative(grid, phi.values)
           + (0.5 * params.m0 * params.omega0 ** 2 * x ** 2 + hw * params.gamma * x) * phi.values)
    res = phi.with_values(lhs - eps * phi.values)
    return res.norm() / phi.norm()


# bosonic split and matrix Hamiltonian -----------------------------------------

def _b_shift(params):
    return params.gtilde / (2 * math.sqrt(2))


def apply_b(params, f):
    """b = a - gamma sigma0 / (2 sqrt 2)."""
    return apply_annihilation(params, 1.0, f) - _b_shift(params) * f.to_psi()


def apply_b_dagger(params, f):
    return apply_creation(params, 1.0, f) - _b_shift(params) * f.to_psi()


def bosonic_split(params, f):
    """Return (hw (b^+ b + 1/2) f, hw gamma sigma0 (b^+ + b) f / (2 sqrt 2))."""
    hw = params.hbar * params.omega0
    fp = f.to_psi()
    h_part = hw * (apply_b_dagger(params, apply_b(params, fp)) + 0.5 * fp)
    field = hw * _b_shift(params) * (apply_b_dagger(params, fp) + apply_b(params, fp))
    return h_part, field


def anticommutator_hamiltonian(params, f):
    """(hw / 2) {b, b^+} f."""
    hw = params.hbar * params.omega0
    bbd = apply_b(params, apply_b_dagger(params, f))
    bdb = apply_b_dagger(params, apply_b(params, f))
    return 0.5 * hw * (bbd + bdb)


def susy_matrix_action(params, f_up, f_down):
    """Block-diagonal H_ss = hw diag(b^+ b, b b^+) acting on (f_up, f_down)."""
    if not f_up.grid.same_as(f_down.grid):
        raise GridError("both components must share one grid")
    hw = params.hbar * params.omega0
    up = hw * apply_b_dagger(params, apply_b(params, f_up))
    down = hw * apply_b(params, apply_b_dagger(params, f_down))
    return up, down


def susy_matrix_reference(params, f_up, f_down):
    """H - (hw/2 + V_gamma) sigma_z applied componentwise, V_gamma = hw gamma x / 2."""
    hw = params.hbar * params.omega0
    w = 0.5 * hw * f_up.grid.weight
    h_up = apply_hamiltonian(params, f_up)
    h_down = apply_hamiltonian(params, f_down)
    return (h_up.with_values(h_up.values - w * f_up.to_psi().values),
            h_down.with_values(h_down.values + w * f_down.to_psi().values))


# shape invariance -------------------------------------------------------------

def remainder(params, beta):
    return params.hbar * params.omega0 * (1 - 0.5 * params.gtilde ** 2 * (beta + 1))


def beta_sequence(beta, n):
    """beta_1 .. beta_n with beta_{j+1} = beta_j + 2."""
    return [beta + ETA * (j - 1) for j in range(1, n + 1)]


def si_mu(params, n, beta):
    """Laguerre index nu_n + 1 - beta of psi_{n,beta}."""
    return 2 * params.s - 2 * n - beta


def require_si_level(params, n, beta):
    if n < 0 or int(n) != n:
        raise BoundStateError(f"level index must be a nonnegative integer, got {n}")
    if params.gamma > 0 and not si_mu(params, n, beta) > 0:
        raise BoundStateError(
            f"shape-invariant level n={n}, beta={beta} needs 2s - 2n - beta > 0")


def si_energy(params, n, beta):
    """E_n^(+)(beta) = hw n [1 - (gamma sigma0)^2 (n + beta) / 2]."""
    require_si_level(params, n, beta)
    return params.hbar * params.omega0 * n * (1 - 0.5 * params.gtilde ** 2 * (n + beta))


def si_energy_telescoped(params, n, beta):
    return math.fsum(remainder(params, b) for b in beta_sequence(beta, n))


def deformed_factorial(params, n, beta, form="gamma"):
    """[n_gamma(beta)]! in one of three forms.

    product  prod_j E_j^(+)(beta) / hw, the norm of (L_+)^n psi_{0,beta}
    chain    prod_j E_(n+1-j)^(+)(beta_j) / hw, the norm of
             a^+(beta_1) ... a^+(beta_n) psi_0(beta_(n+1))
    gamma    n! Gamma(2s + 1 - beta - n) / ((2s)^n Gamma(2s + 1 - beta - 2n))

    `chain` and `gamma` are identical; `product` differs from them when gamma > 0.
    """
    if n == 0:
        return 1.0
    hw = params.hbar * params.omega0
    if form == "product" or (form == "gamma" and params.gamma == 0):
        return math.prod(si_energy_raw(params, j, beta) / hw for j in range(1, n + 1))
    if form == "chain":
        return math.prod(si_energy_raw(params, n + 1 - j, beta + ETA * (j - 1)) / hw
                         for j in range(1, n + 1))
    if form != "gamma":
        raise ValueError("form must be 'product', 'chain' or 'gamma'")
    two_s = 2 * params.s
    a, b = two_s + 1 - beta - n, two_s + 1 - beta - 2 * n
    if not (a > 0 and b > 0):
        raise DomainError(f"Gamma arguments must be positive, got {a}, {b}")
    # Gamma(a)/Gamma(b) with a - b = n as a Pochhammer product: ln_gamma
    # differences lose ~1e-7 relative once 2s ~ 1e8
    return math.factorial(n) * math.prod((b + k) / two_s for k in range(n))


def si_energy_raw(params, n, beta):
    return params.hbar * params.omega0 * n * (1 - 0.5 * params.gtilde ** 2 * (n + beta))


def si_eigenfunction_z(params, n, beta, z):
    return spectrum.laguerre_state_z(params, n, si_mu(params, n, beta), z)


def si_eigenfunction(params, n, beta, x):
    require_si_level(params, n, beta)
    if params.gamma == 0:
        return spectrum.hermite_function(n, x, params.sigma0)
    return spectrum._on_domain(params, x, lambda z: si_eigenfunction_z(params, n, beta, z))


def si_eigenfunction_on(grid, n, beta):
    params = grid.params
    require_si_level(params, n, beta)
    if params.gamma == 0:
        return WaveFn(grid, spectrum.hermite_function(n, grid.x, params.sigma0))
    return WaveFn(grid, si_eigenfunction_z(params, n, beta, grid.z))


def ladder_coefficient(params, n, beta, direction):
    if direction is Direction.DOWN:
        if n == 0:
            return 0.0
        rad = n * (1 - 0.5 * params.gtilde ** 2 * (n + beta))
    else:
        rad = (n + 1) * (1 - 0.5 * params.gtilde ** 2 * (n + 1 + beta))
    if rad < 0:
        raise BoundStateError(f"ladder coefficient radicand {rad:.6g} < 0 (n={n}, beta={beta})")
    return math.sqrt(rad)


def beta_shift(f, beta_from, beta_to, levels):
    """Realize exp(+-eta d/dbeta) on a sampled function.

    `f` is expanded on the orthonormal states psi_{k,beta_from},
    k in `levels`, and each component is re-evaluated at beta_to. Returns
    the shifted function and the norm of the part of f outside the span.
    """
    grid = f.grid
    fv = f.to_psi()
    shifted = np.zeros(len(grid), dtype=complex if np.iscomplexobj(fv.values) else float)
    rest = fv.values.copy()
    for k in levels:
        src = si_eigenfunction_on(grid, k, beta_from).values
        c = np.sum(grid.measure() * src * fv.values)
        rest = rest - c * src
        shifted = shifted + c * si_eigenfunction_on(grid, k, beta_to).values
    return WaveFn(grid, shifted), fv.with_values(rest).norm()


def apply_ladder(params, n, beta, direction, grid):
    """L_+ = a^+(beta) Lambda(beta) and L_- = Lambda^+(beta) a(beta) on psi_{n,beta}.

    Lambda re-evaluates closed forms at beta + eta; Lambda^+ maps the
    expansion on psi_{k,beta+eta} back to psi_{k,beta}.
    """
    if grid.params != params:
        raise GridError("grid was built for different parameters")
    ladder_coefficient(params, n, beta, direction)
    if direction is Direction.UP:
        return apply_creation(params, beta, si_eigenfunction_on(grid, n, beta + ETA))
    lowered = apply_annihilation(params, beta, si_eigenfunction_on(grid, n, beta))
    if n == 0:
        return lowered
    levels = [k for k in range(n) if params.gamma == 0 or si_mu(params, k, beta + ETA) > 0]
    shifted, _ = beta_shift(lowered, beta + ETA, beta, levels)
    return shifted


def ladder_action_printed(params, n, beta, direction, grid):
    """The explicit first-order ladder action quoted alongside the ladder
    operators, kept for numeric comparison against the coefficient form."""
    s2 = 2 * params.s
    sg = 1 if direction is Direction.UP else -1
    b = beta
    ratio = ((s2 - 2 * n - sg * 2 - b) * (s2 - n - sg - b) ** sg
             / ((s2 - 2 * n - b) * (s2 - n - b) ** sg))
    if ratio < 0:
        raise BoundStateError("printed ladder action has a negative radicand here")
    amp = math.sqrt(ratio) * (s2 - 2 * n - sg - b) / s2
    psi = si_eigenfunction_on(grid, n, beta).values
    w = grid.weight
    mult = ((s2 + 1 - b) / (s2 - 2 * n - sg - b) - (s2 - 2 * n + sg - b) / s2 / w) / params.gamma
    dpsi = deformed_derivative(grid, psi) / w
    s0 = params.sigma0
    out = (mult * psi - sg * s0 ** 2 * dpsi) * amp / (math.sqrt(2) * s0)
    return WaveFn(grid, out)


# analytic actions for the coefficient representation -----------------------

def _laguerre_derivative(k, mu, z):
    if k == 0:
        return np.zeros_like(z)
    return -assoc_laguerre(k - 1, mu + 1, z)


def _ladder_factor_z(params, beta, k, mu, z, dagger):
    """a(beta) or a^+(beta) applied analytically to the Laguerre state
    (k, mu), returned as values in z."""
    p = 0.5 * (mu - 1)
    s = params.s
    lag = assoc_laguerre(k, mu, z)
    dlag = _laguerre_derivative(k, mu, z)
    env = (-1) ** k * np.exp(0.5 * (spectrum.log_norm_sq(params, k, mu) + math.log(2 * s))
                             - 0.5 * z + p * np.log(z))
    if dagger:
        bracket = (z - s + 0.5 * (beta - 1) - p) * lag - z * dlag
    else:
        bracket = (-s + 0.5 * (beta + 1) + p) * lag + z * dlag
    return env * bracket / math.sqrt(2 * s)


def _overlap_z(params, f, g, shape):
    """Integral of f(z) g(z) dx with dx = dz / (2 s gamma)."""
    scale = 1.0 / (2 * params.s * params.gamma)
    return integrate_gamma_like(lambda z: f(z) * g(z), shape) * scale


def ladder_matrices(params, size, beta=1.0):
    """Matrix elements <psi_m,beta| L_+/- |psi_n,beta> for m, n < size, by
    Gauss-Legendre quadrature of analytic operator actions."""
    up = np.zeros((size, size))
    down = np.zeros((size, size))
    bp = beta + ETA
    for n in range(size):
        mu_n = si_mu(params, n, beta)
        for m in range(size):
            mu_m = si_mu(params, m, beta)
            psi_m = lambda z, m=m, mu=mu_m: spectrum.laguerre_state_z(params, m, mu, z)
            shape = 0.5 * (mu_m + mu_n) + m + n + 2
            if si_mu(params, n, bp) > 0:
                mu_up = si_mu(params, n, bp)
                act = lambda z, n=n, mu=mu_up: _ladder_factor_z(params, beta, n, mu, z, True)
                up[m, n] = _overlap_z(params, psi_m, act, shape)
            if si_mu(params, m, bp) > 0:
                mu_low = si_mu(params, m, bp)
                tgt = lambda z, m=m, mu=mu_low: spectrum.laguerre_state_z(params, m, mu, z)
                act = lambda z, n=n, mu=mu_n: _ladder_factor_z(params, beta, n, mu, z, False)
                down[m, n] = _overlap_z(params, tgt, act, shape)
    return up, down


def su11_check(params, n_max_test, beta=1.0):
    """Verify the SU(1,1)-type commutators of M_+/- = sqrt(2s) L_+/-, M_0.

    Matrices come from quadrature of analytic actions (no stacked finite
    differences). Reports residuals for the relations as printed, with
    M_0 = 2s L_0, and for M_0 = -2s L_0, under which both printed relations
    hold; also [L_-, L_+] = 2 L_0 and the agreement with ladder_coefficient.
    """
    if params.gamma == 0:
        return {"skipped": True,
                "reason": "gamma = 0: s is infinite and M_+/- = sqrt(2s) L_+/- diverge"}
    size = n_max_test + 2
    for n in range(size):
        require_si_level(params, n, beta)
    up, down = ladder_matrices(params, size, beta)
    ns = np.arange(size)
    l0 = np.diag(0.5 * (1 - params.gtilde ** 2 * (ns + beta)))
    two_s = 2 * params.s
    keep = slice(0, n_max_test + 1)

    def comm(a, b):
        return (a @ b - b @ a)[keep, keep]

    def maxabs(m):
        return float(np.max(np.abs(m)))

    mp, mm = math.sqrt(two_s) * up, math.sqrt(two_s) * down
    report = {"skipped": False, "n_max_test": n_max_test, "beta": beta}
    report["L_commutator"] = maxabs(comm(down, up) - 2 * l0[keep, keep])
    for label, m0 in (("printed", two_s * l0), ("sign_flipped", -two_s * l0)):
        report[label] = {
            "[M+,M-]-2M0": maxabs(comm(mp, mm) - 2 * m0[keep, keep]),
            "[M0,M+]-M+": maxabs(comm(m0, mp) - mp[keep, keep]),
            "[M0,M-]+M-": maxabs(comm(m0, mm) + mm[keep, keep]),
        }
    coeff_up = np.zeros_like(up)
    coeff_down = np.zeros_like(down)
    for n in range(size):
        if n + 1 < size:
            coeff_up[n + 1, n] = ladder_coefficient(params, n, beta, Direction.UP)
        if n > 0:
            coeff_down[n - 1, n] = ladder_coefficient(params, n, beta, Direction.DOWN)
    report["quadrature_vs_coefficients"] = max(
        maxabs((up - coeff_up)[:, :size - 1]), maxabs(down - coeff_down))
    return report
