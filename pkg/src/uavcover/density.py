"""User densities over the region and the cell integrals built on them.

Average power, its position gradient and its height gradient are all
midpoint-rule sums over the shared assignment grid, so the argmin surface
and the integrals never disagree about cell boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import DomainError
from .power import PowerParams
from .region import Grid, PolygonRegion
from .tessellation import AssignmentGrid, Deployment

__all__ = [
    "DensityField", "DensityRaster", "PowerReport",
    "average_power", "position_gradient", "height_gradient",
]

MASS_TOLERANCE = 1e-6


@dataclass(frozen=True)
class DensityField:
    """User density: uniform over the region or a Gaussian mixture.

    Mixture components are taken verbatim as (weight, mean, sigma) with
    the literal density A / (sqrt(2 pi) sigma^2) * exp(-r^2 / (2 sigma));
    ``sigma_scale`` multiplies every sigma so narrow spikes can be widened
    without touching the component table.  Normalization is numerical:
    ``on_grid`` rescales so the grid-weighted mass is exactly 1.
    """

    kind: str
    region: PolygonRegion
    weights: tuple = ()
    means: tuple = ()
    sigmas: tuple = ()
    sigma_scale: float = 1.0

    @classmethod
    def uniform(cls, region: PolygonRegion) -> "DensityField":
        return cls(kind="uniform", region=region)

    @classmethod
    def gaussian_mixture(cls, region: PolygonRegion, weights, means, sigmas,
                         sigma_scale: float = 1.0) -> "DensityField":
        weights = tuple(float(w) for w in weights)
        means = tuple((float(x), float(y)) for x, y in means)
        sigmas = tuple(float(s) for s in sigmas)
        if not (len(weights) == len(means) == len(sigmas)) or not weights:
            raise DomainError("mixture needs matching nonempty weight/mean/sigma lists")
        if any(w <= 0 for w in weights) or any(s <= 0 for s in sigmas):
            raise DomainError("mixture weights and sigmas must be positive")
        if sigma_scale <= 0:
            raise DomainError("sigma_scale must be positive")
        return cls(kind="gaussian-mixture", region=region, weights=weights,
                   means=means, sigmas=sigmas, sigma_scale=sigma_scale)

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        """Unnormalized density at the given (..., 2) points."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        if self.kind == "uniform":
            return np.ones(len(pts))
        out = np.zeros(len(pts))
        for w, (cx, cy), s in zip(self.weights, self.means, self.sigmas):
            s_eff = s * self.sigma_scale
            r2 = (pts[:, 0] - cx) ** 2 + (pts[:, 1] - cy) ** 2
            out += w / (np.sqrt(2.0 * np.pi) * s_eff ** 2) * np.exp(-r2 / (2.0 * s_eff))
        return out

    def on_grid(self, grid: Grid) -> "DensityRaster":
        """Rasterize and renormalize so the grid mass is exactly 1."""
        values = np.zeros(grid.ny * grid.nx)
        m = grid.mask.ravel()
        values[m] = self.evaluate(grid.points[m])
        mass = values[m].sum() * grid.cell_area
        if mass <= 0.0:
            raise DomainError("density has no mass inside the region")
        values /= mass
        return DensityRaster(grid=grid, values=values.reshape(grid.ny, grid.nx))


@dataclass(frozen=True)
class DensityRaster:
    """Density sampled on a grid; zero outside the region mask."""

    grid: Grid
    values: np.ndarray = field(repr=False)

    @property
    def mass(self) -> float:
        return float(self.values[self.grid.mask].sum() * self.grid.cell_area)

    @cached_property
    def inside_weights(self) -> np.ndarray:
        """Quadrature weights lambda * cell_area at in-region points."""
        return self.values[self.grid.mask] * self.grid.cell_area


@dataclass(frozen=True)
class PowerReport:
    """Average power split per cell, plus the served mass fraction."""

    total: float
    per_cell: np.ndarray
    coverage_fraction: float


def _check_mass(density: DensityRaster):
    if abs(density.mass - 1.0) > MASS_TOLERANCE:
        raise DomainError(f"density mass {density.mass!r} is not 1 on this grid")


def _owned_power(deployment: Deployment, assignment: AssignmentGrid,
                 params: PowerParams) -> np.ndarray:
    """Power toward the owning UAV at each in-region point (inf if unowned)."""
    grid = assignment.grid
    pts = grid.inside_points
    own = assignment.owned
    p = np.full(own.shape, np.inf)
    served = own >= 0
    g = deployment.ground[own[served]]
    h = deployment.heights[own[served]]
    d2 = (pts[served, 0] - g[:, 0]) ** 2 + (pts[served, 1] - g[:, 1]) ** 2 + h * h
    p[served] = d2 ** params.gamma / h ** params.kappa * params.power_scale
    return p


def average_power(deployment: Deployment, assignment: AssignmentGrid,
                  density: DensityRaster, params: PowerParams) -> PowerReport:
    """Midpoint-rule average transmit power over the owned grid points."""
    _check_mass(density)
    own = assignment.owned
    served = own >= 0
    lam_w = density.inside_weights
    p = _owned_power(deployment, assignment, params)
    contrib = np.zeros(own.shape)
    contrib[served] = p[served] * lam_w[served]
    per_cell = np.bincount(own[served], weights=contrib[served],
                           minlength=deployment.n)
    total_mass = lam_w.sum()
    coverage = lam_w[served].sum() / total_mass if total_mass > 0 else 0.0
    return PowerReport(total=float(per_cell.sum()), per_cell=per_cell,
                       coverage_fraction=float(coverage))


def position_gradient(n_idx: int, deployment: Deployment,
                      assignment: AssignmentGrid, density: DensityRaster,
                      params: PowerParams) -> np.ndarray:
    """d(average power)/d(ground position of UAV n) on the frozen cells.

    Integrand: 2*gamma/h^kappa * (p_n - w) * (||p_n - w||^2 + h^2)^(gamma-1).
    Empty cell gives the zero vector.
    """
    grid = assignment.grid
    sel = assignment.owned == n_idx
    if not sel.any():
        return np.zeros(2)
    pts = grid.inside_points[sel]
    lam_w = density.inside_weights[sel]
    p_n = deployment.ground[n_idx]
    h = float(deployment.heights[n_idx])
    diff = p_n - pts
    d2 = diff[:, 0] ** 2 + diff[:, 1] ** 2 + h * h
    kernel = d2 ** (params.gamma - 1.0) * lam_w
    factor = 2.0 * params.gamma / h ** params.kappa * params.power_scale
    return factor * np.array([np.dot(diff[:, 0], kernel),
                              np.dot(diff[:, 1], kernel)])


def height_gradient(n_idx: int, deployment: Deployment,
                    assignment: AssignmentGrid, density: DensityRaster,
                    params: PowerParams) -> float:
    """d(average power)/d(height of UAV n) on the frozen cells.

    Direct derivative of (r^2 + h^2)^gamma / h^kappa:
    (2*gamma*h^2*(r^2+h^2)^(gamma-1) - kappa*(r^2+h^2)^gamma) / h^(kappa+1).
    """
    grid = assignment.grid
    sel = assignment.owned == n_idx
    if not sel.any():
        return 0.0
    pts = grid.inside_points[sel]
    lam_w = density.inside_weights[sel]
    p_n = deployment.ground[n_idx]
    h = float(deployment.heights[n_idx])
    d2 = (pts[:, 0] - p_n[0]) ** 2 + (pts[:, 1] - p_n[1]) ** 2 + h * h
    gamma, kappa = params.gamma, params.kappa
    integrand = (2.0 * gamma * h * h * d2 ** (gamma - 1.0) - kappa * d2 ** gamma)
    return float(np.dot(integrand, lam_w) / h ** (kappa + 1.0) * params.power_scale)
