"""Generalized Voronoi (circle-bisector) cells under unequal heights.

Writes cells.ppm showing how a high UAV's cell shrinks to nothing, the
empty-cell effect: with the second UAV at 2.3 its disk misses the square.

Run:  python demos/02_mobius_cells.py
"""

import numpy as np

from uavcover import (Deployment, PolygonRegion, PowerParams, assign_cells,
                      assignment_to_ppm, build_grid, cell_area_fractions,
                      dominance_region, tx_power)


def main():
    params = PowerParams(alpha=2.0, kappa=1.0, h_min=0.01)
    region = PolygonRegion.rectangle(0, 0, 1, 1)
    grid = build_grid(region, 512)

    print("Two UAVs, second one climbing: its cell area fraction")
    for h2 in (0.6, 1.0, 1.5, 2.0, 2.3):
        dep = Deployment([[0.1, 0.2], [0.6, 0.6]], [0.5, h2])
        fractions = cell_area_fractions(assign_cells(dep, grid, params))
        print(f"  h2={h2:4.1f}  fraction={fractions[1]:.4f}")

    dep = Deployment([[0.1, 0.2], [0.6, 0.6]], [0.5, 1.0])
    reg = dominance_region(0, 1, dep, params)
    print(f"\nBisector of UAV0 over UAV1: {reg.kind}, center={reg.center}, "
          f"radius={reg.radius:.4f}")
    pts = reg.boundary_points(8)
    p0 = tx_power(pts, dep.ground[0], dep.heights[0], params)
    p1 = tx_power(pts, dep.ground[1], dep.heights[1], params)
    print("equal power on the circle, max rel gap:",
          float(np.max(np.abs(p0 - p1) / p0)))

    assignment = assign_cells(dep, grid, params)
    with open("cells.ppm", "wb") as fh:
        fh.write(assignment_to_ppm(assignment, dep))
    print("\nwrote cells.ppm (owner raster with UAV markers)")


if __name__ == "__main__":
    main()
