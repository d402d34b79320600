"""Produce figure data through the command-line front end.

Writes CSV files to ./figure_data (or the directory given as argument).
Run: python3 demos/cli_figure_data.py [outdir]
"""
import pathlib
import sys

from pdm_oscillator import cli

JOBS = {
    "spectrum.csv": ["spectrum"],
    "ground_state.csv": ["eigenfunction", "--n", "0"],
    "classical_A1.csv": ["classical", "--amplitude", "1.0", "--t-end", "2"],
    "phase_space.csv": ["phase-space", "--alpha-abs", "1.0"],
    "gup_surface.csv": ["gup-surface", "--samples", "21"],
    "uncertainty.csv": ["uncertainty-series", "--alpha-abs", "0.7"],
    "density.csv": ["density-movie", "--samples", "5"],
}


def main():
    outdir = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "figure_data")
    outdir.mkdir(parents=True, exist_ok=True)
    for name, argv in JOBS.items():
        target = outdir / name
        code = cli.run(argv + ["--gamma-sigma0", "0.4", "--out", str(target)])
        lines = target.read_text().count("\n") if code == 0 else 0
        print(f"{name:20s} exit {code}, {lines} lines")
    print("verify --suite figures exit", cli.run(["verify", "--suite", "figures"]))


if __name__ == "__main__":
    main()
