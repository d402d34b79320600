"""Coherent states: moments, the deformed uncertainty bound and time evolution.

Run: python3 demos/coherent_states.py
"""
import math

import numpy as np

from pdm_oscillator import ModelParams
from pdm_oscillator import coherent as cs
from pdm_oscillator.oracle import Observable, expectation_quadrature


def main():
    p = ModelParams.from_gtilde(0.4)
    st = cs.CoherentState(p, 1 / math.sqrt(2))
    ex, ex2, epi, epi2 = cs.coherent_moments(st)
    f = cs.coherent_on(cs.coherent_grid(p, abs(st.alpha)), st)
    print(f"alpha = 1/sqrt2, lambda = {st.lambda_cs:.4f}")
    print(f"<x>   closed form {ex:.10f}  quadrature {expectation_quadrature(f, Observable.X).real:.10f}")
    print(f"<Pi2> closed form {epi2:.10f}  quadrature {expectation_quadrature(f, Observable.PI2).real:.10f}")
    dx, dpi, dp = cs.uncertainties(st)
    print(f"dx dPi = {dx * dpi:.10f} saturates (hbar/2)(1 + gamma <x>) = {cs.gup_bound(st):.10f}")
    print(f"dx dp  = {dx * dp:.6f} with the canonical momentum")

    omega = cs.phase_parameters(p, abs(st.alpha))[1]
    period = cs.coherent_period(p, abs(st.alpha))
    print(f"Omega = {omega:.6f} w0, period = {period / (2 * math.pi):.6f} tau0")
    ts = np.linspace(0, period, 5)
    ex_t, epi_t, ep_t = cs.expected_trajectory(p, abs(st.alpha), ts)
    for t, a, b in zip(ts, ex_t, epi_t):
        print(f"  t = {t / (2 * math.pi):.4f} tau0: <x> = {a:+.6f}, <Pi> = {b:+.6f}")

    try:
        cs.CoherentState(p, -2.0)
    except cs.NormalizabilityError as exc:
        print("alpha = -2:", exc)


if __name__ == "__main__":
    main()
