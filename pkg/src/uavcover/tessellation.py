"""Cell ownership under the power-argmin assignment.

For unequal UAV heights the pairwise bisectors are circles: the set of
ground points where UAV n needs no more power than UAV m is a disk, a
disk complement, or a half plane when the heights tie.  Cells are
materialized as argmin rasters (they can be non-convex and even
disconnected), while the analytic circle/half-plane regions are kept for
cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import DomainError
from .power import PowerParams
from .region import Grid

__all__ = [
    "Deployment", "DominanceRegion", "AssignmentGrid",
    "height_ratio", "dominance_region", "assign_cells", "cell_area_fractions",
    "assignment_to_csv", "assignment_to_ppm",
]

# Heights closer than this relative gap behave as equal: the bisector
# circle's radius diverges as the height ratio approaches 1.
EQUAL_HEIGHT_RTOL = 1e-12

NO_OWNER = -1


@dataclass(frozen=True)
class Deployment:
    """Ground positions (N, 2) and flight heights (N,) of the UAV fleet."""

    ground: np.ndarray
    heights: np.ndarray

    def __post_init__(self):
        g = np.atleast_2d(np.asarray(self.ground, dtype=float))
        h = np.atleast_1d(np.asarray(self.heights, dtype=float))
        if g.ndim != 2 or g.shape[1] != 2:
            raise DomainError("ground positions must have shape (N, 2)")
        if h.shape != (g.shape[0],):
            raise DomainError("need exactly one height per ground position")
        if g.shape[0] < 1:
            raise DomainError("deployment needs at least one UAV")
        if np.any(h <= 0.0):
            raise DomainError("heights must be positive")
        object.__setattr__(self, "ground", g)
        object.__setattr__(self, "heights", h)

    @property
    def n(self) -> int:
        return self.ground.shape[0]

    def scaled(self, s: float) -> "Deployment":
        return Deployment(self.ground * s, self.heights * s)


@dataclass(frozen=True)
class DominanceRegion:
    """Where UAV n needs no more power than UAV m.

    ``kind`` is 'half_plane' (equal heights, boundary is the perpendicular
    bisector), 'disk' (n lower than m) or 'disk_complement' (n higher).
    """

    kind: str
    center: np.ndarray | None = None
    radius: float | None = None
    normal: np.ndarray | None = None   # points from p_n toward p_m
    midpoint: np.ndarray | None = None

    def contains(self, points: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        if self.kind == "half_plane":
            return (pts - self.midpoint) @ self.normal <= 0.0
        d = np.linalg.norm(pts - self.center, axis=-1)
        if self.kind == "disk":
            return d <= self.radius
        return d >= self.radius

    def boundary_points(self, count: int) -> np.ndarray:
        """Equally spaced sample points on the bisector circle."""
        if self.kind == "half_plane":
            raise DomainError("half-plane boundary is a line, not a circle")
        ang = np.linspace(0.0, 2.0 * np.pi, count, endpoint=False)
        ring = np.stack([np.cos(ang), np.sin(ang)], axis=1)
        return self.center + self.radius * ring


@dataclass(frozen=True)
class AssignmentGrid:
    """Raster of cell ownership; NO_OWNER marks points outside the region."""

    grid: Grid
    owner: np.ndarray = field(repr=False)
    n_sites: int = 0

    @cached_property
    def owned(self) -> np.ndarray:
        """Owner indices of the in-region points, in raster order."""
        return self.owner.ravel()[self.grid.mask.ravel()]


def height_ratio(h_n: float, h_m: float, params: PowerParams) -> float:
    """Multiplicative weight ratio (h_n / h_m)^(kappa / gamma)."""
    if h_n <= 0.0 or h_m <= 0.0:
        raise DomainError("heights must be positive")
    if params.gamma <= 0.0:
        raise DomainError("gamma must be positive")
    return (h_n / h_m) ** (params.kappa / params.gamma)


def dominance_region(n_idx: int, m_idx: int, deployment: Deployment,
                     params: PowerParams) -> DominanceRegion:
    """Analytic bisector region of UAV n over UAV m."""
    if n_idx == m_idx:
        raise DomainError("dominance region needs two distinct UAVs")
    if params.kappa < 1.0:
        raise DomainError("bisector algebra requires kappa >= 1")
    if params.gamma < 0.5 * (1.0 + params.kappa):
        raise DomainError("requires gamma >= (1 + kappa) / 2")
    p_n = deployment.ground[n_idx]
    p_m = deployment.ground[m_idx]
    h_n = float(deployment.heights[n_idx])
    h_m = float(deployment.heights[m_idx])

    hr = height_ratio(h_n, h_m, params)
    if (abs(h_n - h_m) <= EQUAL_HEIGHT_RTOL * max(h_n, h_m)
            or abs(1.0 - hr) < EQUAL_HEIGHT_RTOL):
        return DominanceRegion(kind="half_plane", normal=p_m - p_n,
                               midpoint=0.5 * (p_n + p_m))

    center = (p_n - hr * p_m) / (1.0 - hr)
    r2 = (hr / (1.0 - hr) ** 2 * float(np.sum((p_n - p_m) ** 2))
          + h_n ** 2 * (hr ** (1.0 - 2.0 * params.gamma / params.kappa) - 1.0)
          / (1.0 - hr))
    if r2 <= 0.0:
        raise DomainError("degenerate bisector circle")
    kind = "disk" if h_n < h_m else "disk_complement"
    return DominanceRegion(kind=kind, center=center, radius=float(np.sqrt(r2)))


def assign_cells(deployment: Deployment, grid: Grid,
                 params: PowerParams) -> AssignmentGrid:
    """Per-point power argmin over the UAVs; ties go to the lowest index.

    One pass per UAV with a running strict-minimum keeps memory at O(grid)
    and makes the tie rule explicit.
    """
    pts = grid.points
    best = np.full(len(pts), np.inf)
    owner = np.full(len(pts), NO_OWNER, dtype=np.int32)
    gamma, kappa = params.gamma, params.kappa
    for n in range(deployment.n):
        h = float(deployment.heights[n])
        d2 = ((pts[:, 0] - deployment.ground[n, 0]) ** 2
              + (pts[:, 1] - deployment.ground[n, 1]) ** 2 + h * h)
        p = d2 ** gamma / h ** kappa
        better = p < best
        owner[better] = n
        np.minimum(best, p, out=best)
    owner[~grid.mask.ravel()] = NO_OWNER
    return AssignmentGrid(grid=grid, owner=owner.reshape(grid.ny, grid.nx),
                          n_sites=deployment.n)


def cell_area_fractions(assignment: AssignmentGrid) -> np.ndarray:
    """Fraction of in-region grid points owned by each UAV; sums to 1."""
    owned = assignment.owned
    counts = np.bincount(owned, minlength=assignment.n_sites).astype(float)
    return counts / owned.size


def assignment_to_csv(assignment: AssignmentGrid) -> str:
    """CSV text 'x,y,owner' for every in-region grid point."""
    grid = assignment.grid
    pts = grid.inside_points
    owned = assignment.owned
    lines = ["x,y,owner"]
    lines.extend(f"{float(x)!r},{float(y)!r},{o}" for (x, y), o in zip(pts, owned))
    return "\n".join(lines) + "\n"


def _palette(n: int) -> np.ndarray:
    """n visually distinct RGB colors, deterministic in n."""
    import colorsys

    out = np.empty((n, 3), dtype=np.uint8)
    for k in range(n):
        hue = (k * 0.61803398875) % 1.0
        sat = 0.55 if k % 2 == 0 else 0.8
        val = 0.95 if k % 3 == 0 else 0.8
        r, g, b = colorsys.hsv_to_rgb(hue, sat, val)
        out[k] = (int(r * 255), int(g * 255), int(b * 255))
    return out


def assignment_to_ppm(assignment: AssignmentGrid,
                      deployment: Deployment | None = None) -> bytes:
    """Binary PPM raster: one color per cell, white outside, black UAV marks."""
    grid = assignment.grid
    colors = _palette(max(assignment.n_sites, 1))
    img = np.full((grid.ny, grid.nx, 3), 255, dtype=np.uint8)
    own = assignment.owner
    inside = own != NO_OWNER
    img[inside] = colors[own[inside] % len(colors)]
    if deployment is not None:
        for (x, y) in deployment.ground:
            ix = int((x - grid.origin[0]) / grid.spacing[0])
            iy = int((y - grid.origin[1]) / grid.spacing[1])
            lo_x, hi_x = max(ix - 1, 0), min(ix + 2, grid.nx)
            lo_y, hi_y = max(iy - 1, 0), min(iy + 2, grid.ny)
            img[lo_y:hi_y, lo_x:hi_x] = 0
    header = f"P6\n{grid.nx} {grid.ny}\n255\n".encode()
    # flip so north is up in image viewers
    return header + img[::-1].tobytes()
