"""Closed-form spectrum against the finite-difference Morse solver.

Run: python3 demos/spectrum_and_oracle.py
"""
import numpy as np

from pdm_oscillator import ModelParams, spectrum
from pdm_oscillator.oracle import Variant, convergence_ratio, solve_morse_fd


def main():
    p = ModelParams.from_gtilde(0.4)
    top = spectrum.max_bound_index(p)
    print(f"gamma sigma0 = 0.4: s = {p.s:.4g}, highest bound level n = {top}")

    fd = solve_morse_fd(p).energies()
    print(" n   closed form      finite differences   rel. diff")
    for n, e_fd in enumerate(fd):
        e = spectrum.energy(p, n)
        print(f"{n:2d}   {e:.10f}   {e_fd:.10f}         {abs(e_fd / e - 1):.1e}")

    partner = solve_morse_fd(p, Variant.PARTNER_MINUS).energies()
    print("partner ground level", f"{partner[0]:.8f}", "= E_1 - E_0 =",
          f"{spectrum.energy(p, 1) - spectrum.energy(p, 0):.8f}")

    ratios = convergence_ratio(p)
    print("error ratio on halving h (3-point stencil expects 4):", np.round(ratios, 4))

    lvl = spectrum.QuantumLevel(0, p)
    print(f"ground state: <x> = {spectrum.moments(p, 0)[0]:.6f} sigma0, "
          f"dx dp = {spectrum.uncertainty_product(p, 0):.6f} hbar, nu = {lvl.nu:.2f}")


if __name__ == "__main__":
    main()
