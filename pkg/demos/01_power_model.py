"""Tour of the link-power model: gain, beamwidth, and the cost surface.

Run:  python demos/01_power_model.py
"""

import numpy as np

from uavcover import (LinkBudget, LosParams, PowerParams, directivity,
                      hpbw_degrees, link_beta0, regularized_los, tx_power)


def main():
    print("Antenna exponent -> directivity and half-power beamwidth")
    for kappa in (0.0, 1.0, 2.0, 4.0, 8.0):
        width = hpbw_degrees(kappa) if kappa >= 1 else float("nan")
        print(f"  kappa={kappa:4.1f}  D0={directivity(kappa):6.1f}  "
              f"HPBW={width:8.3f} deg")

    print("\nLink constant beta0 for a 1 Mb/s link on 1 MHz of bandwidth")
    budget = LinkBudget(bandwidth_hz=1e6, bitrate_bps=1e6, noise_power_w=1e-13,
                        antenna_const_K=1e-4, ref_distance_d0=1.0,
                        shadow_sigma_db=4.0)
    for alpha in (2.0, 3.0):
        print(f"  alpha={alpha}: beta0={link_beta0(budget, alpha):.4e}")

    print("\nRequired transmit power vs ground distance (normalized units)")
    params = PowerParams(alpha=2.0, kappa=1.0, h_min=25.0)
    h = 60.0
    for r in (0.0, 50.0, 100.0, 200.0, 400.0):
        p = tx_power((r, 0.0), (0.0, 0.0), h, params)
        print(f"  r={r:6.1f} m  P={p:12.1f}")

    print("\n...and vs height for a user 100 m away (finite best height)")
    for h in (10.0, 30.0, 60.0, 120.0, 400.0):
        p = tx_power((100.0, 0.0), (0.0, 0.0), h, params)
        print(f"  h={h:6.1f} m  P={p:12.1f}")

    print("\nRegularized line-of-sight attenuation over elevation")
    los = LosParams(a=12.0, b=0.14, beta_nlos=0.2)
    for deg in (5, 15, 30, 45, 60, 90):
        val = regularized_los(np.radians(deg), los)
        print(f"  elevation={deg:3d} deg  attenuation={val:.4f}")
    print("The cosine antenna pattern decays much faster than this S-curve,")
    print("which is why the optimizer can ignore it above modest elevations.")


if __name__ == "__main__":
    main()
