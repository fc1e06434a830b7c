"""Closed-form asymptotic heights vs root finding vs brute force.

Run:  python demos/04_optimal_heights.py
"""

from uavcover import (brute_force_height, power_formula_audit,
                      solve_common_height_closed, solve_common_height_numeric)


def main():
    print("optimal common height h* = c * sqrt(cell area)")
    print("gamma kappa |   c closed    c numeric   c brute-force")
    for gamma in (1, 2, 3):
        for kappa in sorted({1.0, float(gamma), 2.0 * gamma - 1.0}):
            closed = solve_common_height_closed(gamma, kappa, 1.0)
            numeric = solve_common_height_numeric(float(gamma), kappa, 1.0)
            alpha = 2.0 * gamma - kappa
            bf = brute_force_height(1.0, kappa, alpha, samples=5000)
            print(f"  {gamma}    {kappa:3.1f} | {closed.c_factor:11.8f} "
                  f"{numeric.c_factor:12.8f} {bf:14.8f}")

    print("\nfractional exponents have no closed form; the root finder"
          " covers them:")
    for gamma in (1.25, 1.5, 2.5):
        sol = solve_common_height_numeric(gamma, 1.0, 1.0)
        print(f"  gamma={gamma:4.2f}  c={sol.c_factor:.8f}  "
              f"P*={sol.p_bar_star:.6f}")

    print("\npower-formula audit (quadrature is the arbiter):")
    for row in power_formula_audit():
        print(f"  gamma={row.gamma} quad={row.quadrature:.8f} "
              f"moment={row.moment_form:.8f} display={row.display_form:.8f}")
        print(f"    -> {row.note}")


if __name__ == "__main__":
    main()
