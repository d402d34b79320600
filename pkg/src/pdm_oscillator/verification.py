"""Verification suites: closed forms against independent numerics.

Each suite returns a list of Check records. `run_suites` is used by the
``verify`` command and by the acceptance tests.
"""
import math
import time
from dataclasses import dataclass

import numpy as np

from . import classical, coherent, oracle, spectrum, susy
from .core import ModelParams, default_grid, integrate
from .errors import DomainError


@dataclass
class Check:
    suite: str
    name: str
    value: float
    tol: float
    passed: bool
    info: bool = False

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        if self.info:
            status = "INFO-" + status
        return f"{status}  [{self.suite}] {self.name}: {self.value:.3e} (tol {self.tol:.0e})"


def _check(suite, name, value, tol):
    value = float(value)
    return Check(suite, name, value, tol, bool(value <= tol))


def _literal(suite, name, value, tol):
    """A comparison of two printed forms that are known to disagree; reported, not gating."""
    c = _check(suite, name, value, tol)
    c.info = True
    return c


def spectrum_oracle():
    """Closed-form E_n against the finite-difference Morse oracle."""
    out = []
    for g in (0.1, 0.2, 0.4):
        p = ModelParams.from_gtilde(g)
        top = min(5, spectrum.max_bound_index(p))
        fd = oracle.solve_morse_fd(p).energies()
        rel = max(abs(fd[n] / spectrum.energy(p, n) - 1) for n in range(top + 1))
        out.append(_check("spectrum", f"gamma*sigma0={g} n<={top} max rel err", rel, 1e-6))
    return out


def spot_values():
    p = ModelParams.from_gtilde(0.4)
    fd = oracle.solve_morse_fd(p).energies()
    out = [
        _check("spot", "gamma*sigma0=0.4 n_max = 5", abs(spectrum.max_bound_index(p) - 5), 0),
        _check("spot", "gamma*sigma0=0.4 E0 = 0.48", abs(spectrum.energy(p, 0) - 0.48), 1e-12),
        _check("spot", "gamma*sigma0=0.4 E1 = 1.32", abs(spectrum.energy(p, 1) - 1.32), 1e-12),
        _check("spot", "oracle E0, E1 vs 0.48, 1.32",
               max(abs(fd[0] / 0.48 - 1), abs(fd[1] / 1.32 - 1)), 1e-6),
    ]
    p0 = ModelParams.from_gtilde(0.0)
    err = max(abs(spectrum.energy(p0, n) - (n + 0.5)) for n in range(10))
    out.append(_check("spot", "gamma=0 E_n = n + 1/2", err, 1e-15))
    return out


def orthonormality():
    out = []
    for g in (0.1, 0.2, 0.4):
        p = ModelParams.from_gtilde(g)
        grid = default_grid(p)
        fs = [spectrum.eigenfunction_on(grid, n).values for n in range(6)]
        gram = np.array([[integrate(grid, a * b) for b in fs] for a in fs])
        out.append(_check("orthonormality", f"gamma*sigma0={g} |G - I|_max",
                          np.max(np.abs(gram - np.eye(6))), 1e-8))
    return out


def intertwining():
    out = []
    for g in (0.2, 0.4):
        p = ModelParams.from_gtilde(g)
        grid = default_grid(p)
        worst_a = worst_ad = 0.0
        for n in (1, 2, 3):
            plus = spectrum.eigenfunction_on(grid, n)
            minus = susy.partner_eigenfunction_minus_on(grid, n - 1)
            c = math.sqrt(susy.partner_energy(p, n, susy.Side.PLUS) / (p.hbar * p.omega0))
            worst_a = max(worst_a, (susy.apply_annihilation(p, 1.0, plus) - c * minus).norm())
            worst_ad = max(worst_ad, (susy.apply_creation(p, 1.0, minus) - c * plus).norm())
        out.append(_check("susy", f"gamma*sigma0={g} a psi_n(+) = c psi_(n-1)(-)", worst_a, 1e-6))
        out.append(_check("susy", f"gamma*sigma0={g} a+ psi_(n-1)(-) = c psi_n(+)", worst_ad, 1e-6))
    return out


def shape_invariance():
    out = []
    for g in (0.2, 0.4):
        p = ModelParams.from_gtilde(g)
        tele = chain = lit = 0.0
        for beta in (1.0, 1.5, 2.0):
            for n in range(6):
                tele = max(tele, abs(susy.si_energy(p, n, beta) - susy.si_energy_telescoped(p, n, beta)))
                ref = susy.deformed_factorial(p, n, beta, "gamma")
                chain = max(chain, abs(susy.deformed_factorial(p, n, beta, "chain") / ref - 1))
                lit = max(lit, abs(susy.deformed_factorial(p, n, beta, "product") / ref - 1))
        out.append(_check("shape", f"gamma*sigma0={g} E(n,beta) - sum R(beta_j)", tele, 1e-12))
        out.append(_check("shape", f"gamma*sigma0={g} chained product vs Gamma ratio", chain, 1e-10))
        out.append(_literal("shape", f"gamma*sigma0={g} prod_j E_j(beta) vs Gamma ratio", lit, 1e-10))
    return out


def ladder_algebra():
    p = ModelParams.from_gtilde(0.4)
    grid = default_grid(p)
    worst = 0.0
    for n in range(4):
        for d in susy.Direction:
            c = susy.ladder_coefficient(p, n, 1.0, d)
            got = susy.apply_ladder(p, n, 1.0, d, grid)
            if d is susy.Direction.DOWN and n == 0:
                err = got.norm()
            else:
                m = n + 1 if d is susy.Direction.UP else n - 1
                err = (got - c * susy.si_eigenfunction_on(grid, m, 1.0)).norm()
            worst = max(worst, err)
    rep = susy.su11_check(p, 3)
    out = [_check("ladder", "L+/- psi_n = coeff psi_(n+/-1), n<=3", worst, 1e-5),
           _check("ladder", "[L-, L+] = 2 L0", rep["L_commutator"], 1e-10),
           _check("ladder", "quadrature matrix vs ladder_coefficient",
                  rep["quadrature_vs_coefficients"], 1e-10),
           _check("ladder", "SU(1,1) with M0 = -2s L0", max(rep["sign_flipped"].values()), 1e-10)]
    out.append(_literal("ladder", "SU(1,1) with M0 = +2s L0", max(rep["printed"].values()), 1e-10))
    return out


def coherent_states():
    out = []
    vals = np.linspace(-1.0, 1.0, 5)
    for g in (0.1, 0.2, 0.4):
        p = ModelParams.from_gtilde(g)
        grid = coherent.coherent_grid(p, re_max=1.0)
        eig = gup = 0.0
        for re in vals:
            for im in vals:
                st = coherent.CoherentState(p, complex(re, im))
                f = coherent.coherent_on(grid, st)
                eig = max(eig, (susy.apply_annihilation(p, 1.0, f) - st.alpha * f).norm() / f.norm())
                ex, ex2, epi, epi2 = coherent.coherent_moments(st)
                prod = math.sqrt((ex2 - ex * ex) * (epi2 - epi * epi))
                gup = max(gup, abs(prod / coherent.gup_bound(st) - 1))
        out.append(_check("coherent", f"gamma*sigma0={g} |a psi - alpha psi| / |psi|", eig, 1e-6))
        out.append(_check("coherent", f"gamma*sigma0={g} dx dPi / (hbar/2)(1+gamma<x>) - 1", gup, 1e-10))
    return out


def classical_rk4():
    out = []
    tau = 2 * math.pi
    for g in (0.4, 0.8):
        p = ModelParams.from_gtilde(g)
        orbit = classical.ClassicalOrbit(p, p.sigma0)
        path = classical.rk4_oracle(p, classical.ClassicalState(p.sigma0, 0.0), 3 * tau, tau / 2000)
        ts = np.array([t for t, _ in path])
        xs = np.array([s.x for _, s in path])
        ps = np.array([s.p for _, s in path])
        x_cf = classical.trajectory(orbit, ts)[0]
        e = classical.classical_energy(p, classical.ClassicalState(xs, ps))
        out.append(_check("classical", f"gamma*sigma0={g} max |x_closed - x_rk4| / sigma0",
                          np.max(np.abs(xs - x_cf)) / p.sigma0, 1e-6))
        out.append(_check("classical", f"gamma*sigma0={g} RK4 energy drift",
                          np.max(np.abs(e / e[0] - 1)), 1e-8))
    return out


def quasi_classical():
    out = []
    r = 1 / math.sqrt(2)
    for g in (0.2, 0.4):
        p = ModelParams.from_gtilde(g)
        grid = coherent.coherent_grid(p, re_max=r)
        period = coherent.coherent_period(p, r)
        ts = np.linspace(0.0, period, 20)
        ex, epi, _ = coherent.expected_trajectory(p, r, ts)
        err = 0.0
        labels = coherent.label_at(coherent.CoherentState(p, r), ts)
        for k, a in enumerate(labels):
            f = coherent.coherent_on(grid, coherent.CoherentState(p, a))
            qx = oracle.expectation_quadrature(f, oracle.Observable.X).real
            qpi = oracle.expectation_quadrature(f, oracle.Observable.PI).real
            err = max(err, abs(qx - ex[k]), abs(qpi - epi[k]))
        out.append(_check("dynamics", f"gamma*sigma0={g} closed <x>,<Pi> vs quadrature", err, 1e-6))
        cfg = coherent.EvolutionConfig(3 * period, 301)
        s1 = coherent.uncertainty_timeseries(p, r, cfg)
        cfg2 = coherent.EvolutionConfig(4 * period, 301, t0=period)
        s2 = coherent.uncertainty_timeseries(p, r, cfg2)
        per = max(np.max(np.abs(s1[k] - s2[k])) for k in ("dx", "dp", "dxdp"))
        out.append(_check("dynamics", f"gamma*sigma0={g} uncertainty series period 2pi/Omega_cs", per, 1e-8))
    p0 = ModelParams.from_gtilde(0.0)
    s0 = coherent.uncertainty_timeseries(p0, r, coherent.EvolutionConfig(3 * 2 * math.pi, 301))
    flat = max(np.ptp(s0["dx"]), np.ptp(s0["dp"]), np.max(np.abs(s0["dxdp"] - 0.5)))
    out.append(_check("dynamics", "gamma=0 uncertainties constant, dx dp = hbar/2", flat, 1e-12))
    return out


def figure_properties():
    out = []
    res = 21
    surf0 = coherent.gup_surface(ModelParams.from_gtilde(0.0), resolution=res)
    out.append(_check("figures", "gamma=0 surface dx dp = hbar/2",
                      np.nanmax(np.abs(surf0["dxdp"] - 0.5)), 1e-12))
    sym = 0.0
    for g in (0.1, 0.2):
        s = coherent.gup_surface(ModelParams.from_gtilde(g), resolution=res)
        for key in ("dx", "dp", "dxdp"):
            a = s[key]
            sym = max(sym, np.nanmax(np.abs(a - a[::-1, :])))
    out.append(_check("figures", "surfaces symmetric under Im alpha -> -Im alpha", sym, 1e-12))
    p = ModelParams.from_gtilde(0.4)
    r = 1 / math.sqrt(2)
    grid = coherent.coherent_grid(p, re_max=r)
    cfg = coherent.EvolutionConfig(math.pi, 3)
    rho = coherent.density_evolution(coherent.CoherentState(p, r), cfg, grid)
    mass = max(abs(integrate(grid, row) - 1) for row in rho)
    out.append(_check("figures", "density slices t = 0, tau0/4, tau0/2 integrate to 1", mass, 1e-8))
    closed = 0.0
    means = []
    for g in (0.0, 0.2, 0.4, 0.5):
        pg = ModelParams.from_gtilde(g)
        period = coherent.coherent_period(pg, r)
        ts = np.linspace(0.0, period, 2001)
        ex, _, ep = coherent.expected_trajectory(pg, r, ts)
        closed = max(closed, math.hypot(ex[-1] - ex[0], ep[-1] - ep[0]))
        means.append(float(np.trapezoid(ex, ts) / period))
    out.append(_check("figures", "phase-space curves closed after one period", closed, 1e-8))
    steps = np.diff(means)
    out.append(_check("figures", "time-averaged <x> decreasing in gamma (max step)",
                      max(0.0, float(np.max(steps))), 0.0))
    return out


SUITES = {
    "spectrum": spectrum_oracle,
    "spot": spot_values,
    "orthonormality": orthonormality,
    "susy": intertwining,
    "shape": shape_invariance,
    "ladder": ladder_algebra,
    "coherent": coherent_states,
    "classical": classical_rk4,
    "dynamics": quasi_classical,
    "figures": figure_properties,
}


def run_suites(names=None):
    """Run the named suites (all by default); returns (checks, seconds per suite)."""
    if isinstance(names, str):
        names = [names]
    names = list(SUITES) if names in (None, ["all"]) else list(names)
    checks, timing = [], {}
    for name in names:
        if name not in SUITES:
            raise DomainError(f"unknown suite {name!r}")
        t = time.perf_counter()
        checks.extend(SUITES[name]())
        timing[name] = time.perf_counter() - t
    return checks, timing
