"""Partner potentials, shape invariance and the ladder algebra.

Run: python3 demos/susy_and_ladders.py
"""
from pdm_oscillator import ModelParams, default_grid, spectrum, susy
from pdm_oscillator.oracle import inner_product


def main():
    p = ModelParams.from_gtilde(0.4)
    print("E_n^(+)   :", [round(susy.partner_energy(p, n, susy.Side.PLUS), 6) for n in range(5)])
    print("E_n^(-)   :", [round(susy.partner_energy(p, n, susy.Side.MINUS), 6) for n in range(4)])

    beta = 1.0
    print("E_n(beta=1) direct vs telescoped:")
    for n in range(4):
        print(f"  n={n}: {susy.si_energy(p, n, beta):.10f}  {susy.si_energy_telescoped(p, n, beta):.10f}")

    for form in ("product", "chain", "gamma"):
        print(f"deformed factorial n=2 [{form}]: {susy.deformed_factorial(p, 2, beta, form):.6f}")

    grid = default_grid(p)
    up = susy.apply_ladder(p, 1, beta, susy.Direction.UP, grid)
    target = susy.si_eigenfunction_on(grid, 2, beta)
    c = susy.ladder_coefficient(p, 1, beta, susy.Direction.UP)
    print(f"<psi_2| L+ |psi_1> = {inner_product(target, up).real:.8f}, expected {c:.8f}")

    rep = susy.su11_check(p, 3, beta)
    print(f"[L-, L+] - 2 L0 residual: {rep['L_commutator']:.1e}")
    for label in ("printed", "sign_flipped"):
        worst = max(rep[label].values())
        print(f"M0 = {'+' if label == 'printed' else '-'}2s L0: worst relation residual {worst:.3g}")

    psi0 = spectrum.eigenfunction_on(grid, 0)
    print("a(beta=1) psi_0 norm:", f"{susy.apply_annihilation(p, 1.0, psi0).norm():.1e}")


if __name__ == "__main__":
    main()
