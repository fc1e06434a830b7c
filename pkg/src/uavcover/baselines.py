"""Comparison deployments: omni-antenna descent and circle-packing layouts.

The omni baseline reuses the independent-height optimizer with the
antenna exponent zeroed out, which makes lower always better so the
heights settle on the floor.  The packing baseline reads precomputed
equal-circle packings (or falls back to a hexagonal lattice), puts one
UAV over each circle center, and picks the common height at which the
half-power cone rim touches the circle edge.  Any deployment can then be
re-scored under any antenna model for apples-to-apples comparisons.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .density import DensityRaster, PowerReport, average_power
from .errors import DomainError
from .lloyd import LloydConfig, RunReport, optimize
from .power import PowerParams
from .region import Grid, PolygonRegion
from .tessellation import Deployment, assign_cells

__all__ = [
    "Packing", "read_packing", "write_packing", "hex_lattice_packing",
    "kss_optimize", "msbd_deploy", "disk_coverage_fraction", "cross_evaluate",
]


@dataclass(frozen=True)
class Packing:
    """Equal-radius non-overlapping disks: centers (N, 2) and one radius."""

    centers: np.ndarray
    radius: float
    source: str = "unknown"

    def __post_init__(self):
        c = np.atleast_2d(np.asarray(self.centers, dtype=float))
        if c.ndim != 2 or c.shape[1] != 2 or c.shape[0] < 1:
            raise DomainError("packing centers must have shape (N, 2)")
        if self.radius <= 0.0:
            raise DomainError("packing radius must be positive")
        object.__setattr__(self, "centers", c)

    @property
    def n(self) -> int:
        return self.centers.shape[0]

    def validate(self, region: PolygonRegion | None = None, rtol: float = 1e-9):
        """Check pairwise non-overlap and, if a region is given, containment."""
        c = self.centers
        if self.n > 1:
            d2 = ((c[:, None, :] - c[None, :, :]) ** 2).sum(-1)
            np.fill_diagonal(d2, np.inf)
            min_gap = math.sqrt(float(d2.min()))
            if min_gap < 2.0 * self.radius * (1.0 - rtol):
                raise DomainError(f"disks overlap: center gap {min_gap} < diameter")
        if region is not None:
            x0, y0, x1, y1 = region.bounds
            r = self.radius * (1.0 - rtol)
            if (np.any(c[:, 0] - r < x0) or np.any(c[:, 0] + r > x1)
                    or np.any(c[:, 1] - r < y0) or np.any(c[:, 1] + r > y1)):
                raise DomainError("packing extends outside the region bounds")


def read_packing(path) -> Packing:
    """Parse the packing CSV: header line 'radius,<r>', then 'x,y' rows."""
    try:
        with open(path) as fh:
            lines = [ln.strip() for ln in fh if ln.strip()]
    except OSError as exc:
        raise DomainError(f"cannot read packing file {path}: {exc}") from exc
    if not lines or not lines[0].lower().startswith("radius,"):
        raise DomainError("packing file must start with a 'radius,<r>' line")
    try:
        radius = float(lines[0].split(",", 1)[1])
        centers = np.array([[float(v) for v in ln.split(",")] for ln in lines[1:]])
    except ValueError as exc:
        raise DomainError(f"malformed packing file {path}: {exc}") from exc
    if centers.size == 0 or centers.shape[1] != 2:
        raise DomainError("packing file needs one 'x,y' row per disk")
    return Packing(centers=centers, radius=radius, source=str(path))


def write_packing(packing: Packing, path):
    rows = [f"radius,{float(packing.radius)!r}"]
    rows += [f"{float(x)!r},{float(y)!r}" for x, y in packing.centers]
    with open(path, "w") as fh:
        fh.write("\n".join(rows) + "\n")


def hex_lattice_packing(region: PolygonRegion, n: int) -> Packing:
    """Fallback equal-circle layout on a hexagonal lattice.

    Not an optimal packing: the lattice pitch is simply the largest one
    that still fits n disks inside the region's bounding rectangle.
    """
    if n < 1:
        raise DomainError("packing needs at least one disk")
    x0, y0, x1, y1 = region.bounds
    w, h = x1 - x0, y1 - y0

    def centers_for(pitch: float) -> np.ndarray:
        r = pitch / 2.0
        dy = pitch * math.sqrt(3.0) / 2.0
        rows = int((h - pitch) / dy) + 1 if h >= pitch else 0
        pts = []
        for j in range(rows):
            y = y0 + r + j * dy
            off = 0.0 if j % 2 == 0 else r
            k = int((w - pitch - off) / pitch) + 1 if w >= pitch + off else 0
            pts.extend((x0 + r + off + i * pitch, y) for i in range(k))
        return np.array(pts) if pts else np.empty((0, 2))

    lo, hi = 1e-9 * min(w, h), min(w, h)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if len(centers_for(mid)) >= n:
            lo = mid
        else:
            hi = mid
    centers = centers_for(lo)[:n]
    return Packing(centers=centers, radius=lo / 2.0 * (1.0 - 1e-9),
                   source=f"hex-lattice({n})")


def kss_optimize(initial: Deployment, config: LloydConfig,
                 density: DensityRaster, params: PowerParams) -> RunReport:
    """Omni-antenna descent: independent heights, antenna exponent zero.

    With no antenna gain the power grows with height, so the optimizer
    drives every UAV to the minimum flight height.
    """
    omni = params.with_kappa(0.0)
    return optimize(initial, replace(config, variant="B"), density, omni)


def msbd_deploy(packing: Packing, theta_hpbw_deg: float) -> Deployment:
    """One UAV per circle center at the height where the beam rim meets
    the circle: h = radius / tan(theta/2)."""
    if not 0.0 < theta_hpbw_deg < 180.0:
        raise DomainError("beamwidth must lie in (0, 180) degrees")
    packing.validate()
    h = packing.radius / math.tan(math.radians(theta_hpbw_deg) / 2.0)
    return Deployment(packing.centers.copy(), np.full(packing.n, h))


def disk_coverage_fraction(packing: Packing, grid: Grid) -> float:
    """Fraction of in-region grid points inside at least one disk."""
    pts = grid.inside_points
    covered = np.zeros(len(pts), dtype=bool)
    r2 = packing.radius ** 2
    for cx, cy in packing.centers:
        covered |= (pts[:, 0] - cx) ** 2 + (pts[:, 1] - cy) ** 2 <= r2
    return float(covered.mean())


def cross_evaluate(deployment: Deployment, grid: Grid, density: DensityRaster,
                   params_eval: PowerParams) -> PowerReport:
    """Score a fixed deployment under a (possibly different) antenna model.

    Cells are re-derived by argmin under the evaluation parameters; in
    physical mode the directivity of the evaluation antenna divides the
    power, which is what makes different exponents comparable.
    """
    assignment = assign_cells(deployment, grid, params_eval)
    return average_power(deployment, assignment, density, params_eval)
