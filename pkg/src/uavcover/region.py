"""Target regions (planar polygons) and the midpoint integration grid.

One grid serves both cell assignment and quadrature, so the argmin
surface and the integrals always see the same discretization.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class PolygonRegion:
    """Simple (non self-intersecting) polygon in meters.

    Vertices are stored counter-clockwise; the constructor flips the
    order if the signed area comes out negative.
    """

    vertices: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2 or v.shape[0] < 3:
            raise DomainError("region polygon needs at least 3 (x, y) vertices")
        if _signed_area(v) < 0.0:
            v = v[::-1]
        object.__setattr__(self, "vertices", v)

    @classmethod
    def rectangle(cls, x0: float, y0: float, x1: float, y1: float) -> "PolygonRegion":
        return cls(np.array([[x0, y0], [x1, y0], [x1, y1], [x0, y1]]))

    @classmethod
    def regular_hexagon(cls, area: float, center=(0.0, 0.0)) -> "PolygonRegion":
        """Regular hexagon of the given area, flat side facing +x."""
        if area <= 0:
            raise DomainError("hexagon area must be positive")
        circumradius = np.sqrt(2.0 * area / (3.0 * np.sqrt(3.0)))
        ang = np.arange(6) * (np.pi / 3.0) + np.pi / 6.0
        verts = np.stack([np.cos(ang), np.sin(ang)], axis=1) * circumradius
        return cls(verts + np.asarray(center, dtype=float))

    @property
    def area(self) -> float:
        return _signed_area(self.vertices)

    @property
    def bounds(self) -> tuple[float, float, float, float]:
        v = self.vertices
        return (float(v[:, 0].min()), float(v[:, 1].min()),
                float(v[:, 0].max()), float(v[:, 1].max()))

    @property
    def diameter(self) -> float:
        x0, y0, x1, y1 = self.bounds
        return float(np.hypot(x1 - x0, y1 - y0))

    def contains(self, points: np.ndarray) -> np.ndarray:
        """Even-odd (crossing number) test, vectorized over points."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        x, y = pts[:, 0], pts[:, 1]
        inside = np.zeros(len(pts), dtype=bool)
        v = self.vertices
        n = len(v)
        for i in range(n):
            x0, y0 = v[i]
            x1, y1 = v[(i + 1) % n]
            crosses = (y0 <= y) != (y1 <= y)
            if not crosses.any():
                continue
            # x coordinate where the edge crosses the horizontal ray
            with np.errstate(divide="ignore", invalid="ignore"):
                xc = x0 + (y - y0) * (x1 - x0) / (y1 - y0)
            inside ^= crosses & (x < xc)
        return inside


def _signed_area(v: np.ndarray) -> float:
    x, y = v[:, 0], v[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


@dataclass(frozen=True)
class Grid:
    """Midpoint-rule raster over a region's bounding box.

    ``mask`` marks cell centers inside the region; integrals are sums of
    ``value * cell_area`` over masked-in centers.
    """

    region: PolygonRegion
    nx: int
    ny: int
    origin: np.ndarray
    spacing: np.ndarray
    mask: np.ndarray = field(repr=False)
    points: np.ndarray = field(repr=False)

    @property
    def cell_area(self) -> float:
        return float(self.spacing[0] * self.spacing[1])

    @cached_property
    def inside_points(self) -> np.ndarray:
        return self.points[self.mask.ravel()]

    @cached_property
    def n_inside(self) -> int:
        return int(self.mask.sum())


def build_grid(region: PolygonRegion, n: int = 512) -> Grid:
    """Square n-by-n midpoint grid over the region's bounding box."""
    if n < 1:
        raise DomainError("grid resolution must be >= 1")
    x0, y0, x1, y1 = region.bounds
    spacing = np.array([(x1 - x0) / n, (y1 - y0) / n])
    xs = x0 + (np.arange(n) + 0.5) * spacing[0]
    ys = y0 + (np.arange(n) + 0.5) * spacing[1]
    gx, gy = np.meshgrid(xs, ys)
    points = np.column_stack([gx.ravel(), gy.ravel()])
    mask = region.contains(points).reshape(n, n)
    if not mask.any():
        raise DomainError("grid has no cell centers inside the region")
    return Grid(region=region, nx=n, ny=n, origin=np.array([x0, y0]),
                spacing=spacing, mask=mask, points=points)
