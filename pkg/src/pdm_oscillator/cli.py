"""Command-line front end: figure data as CSV or JSON, and verification suites.

Units: hbar = m0 = w0 = 1, so sigma0 = 1 and energies are in hbar w0. Times
are given and reported in tau0 = 2 pi / w0.

Exit status: 0 success, 1 verification failure, 2 usage error,
3 parameter outside the domain of the requested operation.
"""
import argparse
import io
import json
import math
import sys

import numpy as np

from . import classical, coherent, spectrum
from .core import GRID_ENV_VAR, ModelParams, default_grid, grid_points
from .errors import DomainError, GridError
from .verification import SUITES, run_suites

TAU0 = 2 * math.pi
EXIT_VERIFY, EXIT_USAGE, EXIT_DOMAIN = 1, 2, 3


def _fmt(v):
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return "%.17g" % float(v)


def write_table(columns, meta, fmt, out):
    """Write a dict of equal-length columns; CSV carries `# key=value` metadata."""
    names = list(columns)
    cols = [np.asarray(columns[k]) for k in names]
    if fmt == "json":
        obj = {k: [json.loads(_fmt(x)) if np.isfinite(x) else None for x in c.tolist()]
               for k, c in zip(names, cols)}
        out.write(json.dumps(obj, sort_keys=False) + "\n")
        return
    for k, v in meta.items():
        out.write(f"# {k}={v}\n")
    out.write(",".join(names) + "\n")
    for row in zip(*cols):
        out.write(",".join(_fmt(x) for x in row) + "\n")


def _params(args):
    if args.gamma_sigma0 < 0:
        raise DomainError("--gamma-sigma0 must be >= 0")
    return ModelParams.from_gtilde(args.gamma_sigma0)


def _alpha(args):
    return complex(args.alpha_re, args.alpha_im)


def cmd_spectrum(args, p):
    top = min(5, spectrum.max_bound_index(p)) if args.n is None else args.n
    ns = np.arange(top + 1)
    cols = {"n": ns, "energy_hbar_omega0": [spectrum.energy(p, int(n)) for n in ns]}
    return cols, {}


def cmd_eigenfunction(args, p):
    n = 0 if args.n is None else args.n
    grid = default_grid(p)
    psi = spectrum.eigenfunction_on(grid, n).values
    return {"x_sigma0": grid.x, "psi": psi, "density": psi * psi}, {"n": n, "grid_points": len(grid)}


def _times(args, default_end):
    t_end = default_end if args.t_end is None else args.t_end * TAU0
    if not t_end > 0:
        raise DomainError("--t-end must be > 0")
    return np.linspace(0.0, t_end, args.samples)


def cmd_classical(args, p):
    orbit = classical.ClassicalOrbit(p, args.amplitude)
    ts = _times(args, 3 * TAU0)
    x, mom, pi = classical.trajectory(orbit, ts)
    cols = {"t_tau0": ts / TAU0, "x_sigma0": x, "pi_gamma": pi, "p": mom,
            "theta": classical.deformed_phase(orbit, ts)}
    return cols, {"amplitude_sigma0": args.amplitude, "omega_gamma": orbit.omega}


def cmd_coherent_evolve(args, p):
    st = coherent.CoherentState(p, _alpha(args))
    ts = _times(args, 3 * TAU0)
    cfg = coherent.EvolutionConfig(ts[-1], len(ts))
    rows = coherent.evolve(st, cfg)
    cols = {k: [] for k in ("t_tau0", "alpha_re", "alpha_im", "lambda_cs", "x_mean",
                            "pi_mean", "p_mean", "global_phase")}
    for t, s, ph in rows:
        ex, _, epi, _ = coherent.coherent_moments(s)
        cols["t_tau0"].append(t / TAU0)
        cols["alpha_re"].append(s.alpha.real)
        cols["alpha_im"].append(s.alpha.imag)
        cols["lambda_cs"].append(s.lambda_cs)
        cols["x_mean"].append(ex)
        cols["pi_mean"].append(epi)
        cols["p_mean"].append(coherent.coherent_p_moments(s)[0])
        cols["global_phase"].append(ph)
    return cols, {"alpha_re": args.alpha_re, "alpha_im": args.alpha_im}


def cmd_phase_space(args, p):
    r = args.alpha_abs
    ts = _times(args, coherent.coherent_period(p, r))
    ex, epi, ep = coherent.expected_trajectory(p, r, ts)
    return ({"t_tau0": ts / TAU0, "x_mean": ex, "p_mean": ep, "pi_mean": epi},
            {"alpha_abs": r, "omega_cs": coherent.phase_parameters(p, r)[1]})


def cmd_gup_surface(args, p):
    s = coherent.gup_surface(p, resolution=args.samples)
    keys = ("re", "im", "dx", "dp", "dxdp", "dpi", "gup_ratio", "valid")
    cols = {("alpha_re" if k == "re" else "alpha_im" if k == "im" else k): s[k].ravel()
            for k in keys}
    return cols, {"resolution": args.samples, "invalid_cells": int((~s["valid"]).sum())}


def cmd_uncertainty_series(args, p):
    ts = _times(args, 3 * TAU0)
    cfg = coherent.EvolutionConfig(ts[-1], len(ts))
    s = coherent.uncertainty_timeseries(p, args.alpha_abs, cfg)
    cols = {"t_tau0": s["t"] / TAU0, "dx": s["dx"], "dp": s["dp"], "dxdp": s["dxdp"]}
    return cols, {"alpha_abs": args.alpha_abs}


def cmd_density_movie(args, p):
    ts = _times(args, 0.5 * TAU0)
    st = coherent.CoherentState(p, args.alpha_abs)
    grid = coherent.coherent_grid(p, args.alpha_abs)
    rho = coherent.density_evolution(st, coherent.EvolutionConfig(ts[-1], len(ts)), grid)
    t_col = np.repeat(ts / TAU0, len(grid))
    x_col = np.tile(grid.x, len(ts))
    return ({"t_tau0": t_col, "x_sigma0": x_col, "density": rho.ravel()},
            {"alpha_abs": args.alpha_abs, "grid_points": len(grid)})


COMMANDS = {
    "spectrum": cmd_spectrum,
    "eigenfunction": cmd_eigenfunction,
    "classical": cmd_classical,
    "coherent-evolve": cmd_coherent_evolve,
    "phase-space": cmd_phase_space,
    "gup-surface": cmd_gup_surface,
    "uncertainty-series": cmd_uncertainty_series,
    "density-movie": cmd_density_movie,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="pdm-osc",
        description="Oscillator with mass m0/(1 + gamma x)^2: figure data and checks.")
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--gamma-sigma0", type=float, default=0.4,
                        help="deformation gamma*sigma0 (default 0.4)")
    common.add_argument("--out", default="-", help="output file (default stdout)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--samples", type=int, default=201, help="time samples or surface resolution")
    common.add_argument("--t-end", type=float, default=None, help="end time in units of tau0")
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name in ("spectrum", "eigenfunction"):
            sp.add_argument("--n", type=int, default=None, help="level index")
        if name == "classical":
            sp.add_argument("--amplitude", type=float, default=1.0, help="amplitude in sigma0")
        if name == "coherent-evolve":
            sp.add_argument("--alpha-re", type=float, default=1 / math.sqrt(2))
            sp.add_argument("--alpha-im", type=float, default=0.0)
        if name in ("phase-space", "uncertainty-series", "density-movie"):
            sp.add_argument("--alpha-abs", type=float, default=1 / math.sqrt(2))
        if name == "density-movie":
            sp.set_defaults(samples=3)
        if name == "gup-surface":
            sp.set_defaults(samples=41)
    vp = sub.add_parser("verify", help="run verification suites")
    vp.add_argument("--suite", default="all", choices=["all", *SUITES])
    return parser


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        if args.command == "verify":
            checks, timing = run_suites(args.suite)
            for c in checks:
                print(c.line())
            for name, sec in timing.items():
                print(f"# {name}: {sec:.2f} s")
            return 0 if all(c.passed for c in checks if not c.info) else EXIT_VERIFY
        if args.samples < 2:
            parser.error("--samples must be >= 2")
        p = _params(args)
        cols, extra = COMMANDS[args.command](args, p)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    except (DomainError, GridError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    meta = {"command": args.command, "gamma_sigma0": repr(args.gamma_sigma0),
            "units": "hbar=m0=omega0=1", "samples": args.samples}
    meta.update({k: (repr(float(v)) if isinstance(v, float) else v) for k, v in extra.items()})
    meta[GRID_ENV_VAR] = grid_points()
    buf = io.StringIO(newline="")
    write_table(cols, meta, args.format, buf)
    data = buf.getvalue()
    if args.out == "-":
        try:
            sys.stdout.write(data)
            sys.stdout.flush()
        except BrokenPipeError:
            sys.stderr.close()
    else:
        with open(args.out, "w", newline="\n", encoding="utf-8") as fh:
            fh.write(data)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
