"""Exact classical orbits against direct RK4 integration.

Run: python3 demos/classical_orbits.py
"""
import math

import numpy as np

from pdm_oscillator import ModelParams
from pdm_oscillator import classical as cl


def main():
    p = ModelParams.from_gtilde(0.4)
    for amp in (0.5, 1.0, 2.0):
        orbit = cl.ClassicalOrbit(p, amp)
        x0, p0, _ = cl.trajectory(orbit, 0.0)
        path = cl.rk4_oracle(p, cl.ClassicalState(x0, p0), orbit.period)
        t, end = path[-1]
        x, mom, _ = cl.trajectory(orbit, t)
        print(f"A = {amp}: Omega = {orbit.omega:.6f}, period = {orbit.period / (2 * math.pi):.6f} tau0, "
              f"RK4 vs exact after one period: {abs(end.x - x):.1e}, {abs(end.p - mom):.1e}")

    orbit = cl.ClassicalOrbit(p, 1.0)
    ts = np.linspace(0, orbit.period, 9)
    x, _, pi = cl.trajectory(orbit, ts)
    print("x(t) over one period: ", np.round(x, 4))
    print("Pi(t) over one period:", np.round(pi, 4))
    print("equation-of-motion residuals:", cl.equation_of_motion_residual(orbit, ts[1:-1]))

    mp = cl.morse_params(p)
    print(f"Morse image: W = {mp.W:.4f}, partner W = {mp.W_tilde:.4f}, shift = {mp.delta:.8f}")

    try:
        cl.ClassicalOrbit(p, 2.5)
    except cl.RegimeError as exc:
        print("A = 2.5:", exc)


if __name__ == "__main__":
    main()
