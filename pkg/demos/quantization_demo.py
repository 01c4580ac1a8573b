"""Two-term quantization vs direct spectral computation.

Prints the action coefficients (alpha1, alpha2) for the two analytic
wells and both kinetic symbols, then compares the two-term ground energy
E0(h) = sqrt(a0) h - sqrt(a0)(a0 alpha1 + alpha2) h^2 with the plane-wave
bottom of -h^2 d^2/dx^2 + V: the difference shrinks like h^3.

Run:

  python demos/quantization_demo.py
"""

from semispec import builtin, locate_minimum, min_spec_pc
from semispec.bohr_sommerfeld import (CONTINUOUS, DISCRETE, TaylorWell,
                                      alphas, e0)


def main():
    print("action coefficients\n")
    print("  potential  kinetic      alpha1          alpha2")
    wells = {}
    for name in ("v1", "v3"):
        wells[name] = TaylorWell.from_well_data(locate_minimum(builtin(name)))
        for kin in (CONTINUOUS, DISCRETE):
            a1, a2 = alphas(wells[name], kin)
            print(f"  {name:9s}  {kin:10s}  {a1:.12f}  {a2:.12f}")

    print("\nspectral vs two-term ground energy (continuous kinetic)\n")
    print("  potential     h        E_spec          E_two_term      |diff|")
    for name in ("v1", "v3"):
        for h in (0.04, 0.02, 0.01):
            spec = min_spec_pc(builtin(name), h, "continuous", 1e-13)
            model = e0(wells[name], CONTINUOUS, h)
            print(f"  {name:9s}  {h:5.2f}   {spec:.12f}  {model:.12f}"
                  f"  {abs(spec - model):.2e}")
        print("            halving h shrinks |diff| ~8x: the remainder is O(h^3)")


if __name__ == "__main__":
    main()
