"""Alternating reassignment / backtracking-descent deployment optimizers.

One outer iteration freezes the current cells, takes a simultaneous
gradient step on all ground positions and heights, and halves the step
until the reassigned average power strictly decreases.  Variant A ties
all UAVs to one common height (updated with the summed height gradient);
variant B lets every height move independently.  The power trace is
non-increasing by construction and heights never drop below the floor.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .density import DensityRaster, average_power, height_gradient, position_gradient
from .errors import DomainError
from .power import PowerParams
from .tessellation import AssignmentGrid, Deployment, assign_cells

__all__ = ["LloydConfig", "RunReport", "MultiStartResult",
           "lloyd_step", "optimize", "multi_start", "random_deployment"]


@dataclass(frozen=True)
class LloydConfig:
    """Knobs of the descent loop.

    ``initial_step`` defaults to a tenth of the region diameter; the
    backtracking line search absorbs the scale either way.
    """

    variant: str = "B"
    initial_step: float | None = None
    stop_threshold: float = 1e-5
    max_outer_iterations: int = 500
    max_halvings: int = 40
    rng_seed: int = 0

    def __post_init__(self):
        if self.variant not in ("A", "B"):
            raise DomainError("variant must be 'A' or 'B'")
        if self.stop_threshold <= 0.0:
            raise DomainError("stop_threshold must be positive")
        if self.initial_step is not None and self.initial_step <= 0.0:
            raise DomainError("initial_step must be positive")
        if self.max_outer_iterations < 1 or self.max_halvings < 1:
            raise DomainError("iteration limits must be >= 1")


@dataclass
class RunReport:
    """Everything one optimizer run produced."""

    power_trace: np.ndarray
    final: Deployment
    iterations: int
    converged: bool
    height_std: float
    height_trace: list = field(default_factory=list, repr=False)

    def final_power(self) -> float:
        return float(self.power_trace[-1])


class StepResult(NamedTuple):
    deployment: Deployment
    power: float
    assignment: AssignmentGrid
    moved: bool


def _gradients(deployment: Deployment, assignment: AssignmentGrid,
               density: DensityRaster, params: PowerParams):
    n = deployment.n
    gp = np.zeros((n, 2))
    gh = np.zeros(n)
    for i in range(n):
        gp[i] = position_gradient(i, deployment, assignment, density, params)
        gh[i] = height_gradient(i, deployment, assignment, density, params)
    return gp, gh


def _propose(deployment: Deployment, gp: np.ndarray, gh: np.ndarray,
             t: float, variant: str, h_min: float) -> Deployment:
    ground = deployment.ground - t * gp
    if variant == "A":
        step = t * gh.sum()
        heights = np.maximum(h_min, deployment.heights - step)
    else:
        heights = np.maximum(h_min, deployment.heights - t * gh)
    return Deployment(ground, heights)


def _step(deployment: Deployment, assignment: AssignmentGrid, p_old: float,
          config: LloydConfig, density: DensityRaster,
          params: PowerParams) -> StepResult:
    gp, gh = _gradients(deployment, assignment, density, params)
    if not gp.any() and not gh.any():
        return StepResult(deployment, p_old, assignment, False)
    delta = config.initial_step
    if delta is None:
        delta = 0.1 * density.grid.region.diameter
    t = delta
    for _ in range(config.max_halvings):
        proposal = _propose(deployment, gp, gh, t, config.variant, params.h_min)
        new_assignment = assign_cells(proposal, density.grid, params)
        p_new = average_power(proposal, new_assignment, density, params).total
        if p_new < p_old:
            return StepResult(proposal, p_new, new_assignment, True)
        t *= 0.5
    return StepResult(deployment, p_old, assignment, False)


def lloyd_step(deployment: Deployment, config: LloydConfig,
               density: DensityRaster, params: PowerParams) -> StepResult:
    """One outer iteration; returns the (possibly unchanged) deployment.

    The returned power never exceeds the incoming one: a proposal is only
    accepted on strict decrease, and exhausting the halvings leaves the
    deployment in place.
    """
    if np.any(deployment.heights < params.h_min):
        raise DomainError("deployment violates the minimum flight height")
    assignment = assign_cells(deployment, density.grid, params)
    p_old = average_power(deployment, assignment, density, params).total
    return _step(deployment, assignment, p_old, config, density, params)


def optimize(initial: Deployment, config: LloydConfig, density: DensityRaster,
             params: PowerParams) -> RunReport:
    """Iterate until the relative power improvement falls below threshold."""
    if np.any(initial.heights < params.h_min):
        raise DomainError("initial heights violate the minimum flight height")
    if config.variant == "A" and np.ptp(initial.heights) != 0.0:
        raise DomainError("variant A needs equal initial heights")

    deployment = initial
    assignment = assign_cells(deployment, density.grid, params)
    power = average_power(deployment, assignment, density, params).total
    trace = [power]
    height_trace = [deployment.heights.copy()]
    converged = False
    iterations = 0
    for _ in range(config.max_outer_iterations):
        result = _step(deployment, assignment, power, config, density, params)
        iterations += 1
        p_old = power
        deployment, power, assignment = result.deployment, result.power, result.assignment
        trace.append(power)
        height_trace.append(deployment.heights.copy())
        if not result.moved or (p_old - power) / p_old <= config.stop_threshold:
            converged = True
            break
    return RunReport(power_trace=np.array(trace), final=deployment,
                     iterations=iterations, converged=converged,
                     height_std=float(np.std(deployment.heights)),
                     height_trace=height_trace)


def random_deployment(n_uavs: int, density: DensityRaster, params: PowerParams,
                      rng: np.random.Generator, init_height_max: float,
                      common_height: bool) -> Deployment:
    """Uniform random start: positions in the region, heights in a box.

    Heights draw uniformly from (0, init_height_max] and are then lifted
    to the flight-height floor; a common-height start uses the mean of
    the drawn heights.
    """
    region = density.grid.region
    x0, y0, x1, y1 = region.bounds
    pts = np.empty((n_uavs, 2))
    placed = 0
    while placed < n_uavs:
        cand = rng.uniform([x0, y0], [x1, y1], size=(4 * (n_uavs - placed), 2))
        cand = cand[region.contains(cand)]
        take = min(len(cand), n_uavs - placed)
        pts[placed:placed + take] = cand[:take]
        placed += take
    heights = rng.uniform(0.0, init_height_max, size=n_uavs)
    if common_height:
        heights = np.full(n_uavs, heights.mean())
    return Deployment(pts, np.maximum(params.h_min, heights))


@dataclass
class MultiStartResult:
    best: RunReport
    best_index: int
    final_powers: np.ndarray
    mean_power: float
    std_power: float
    reports: tuple


def _run_one_restart(args) -> RunReport:
    n_uavs, entropy, config, density, params, init_height_max = args
    rng = np.random.Generator(np.random.PCG64(entropy))
    initial = random_deployment(n_uavs, density, params, rng, init_height_max,
                                common_height=(config.variant == "A"))
    return optimize(initial, config, density, params)


def multi_start(n_uavs: int, num_restarts: int, seed: int | None,
                config: LloydConfig, density: DensityRaster,
                params: PowerParams, init_height_max: float = 100.0,
                n_jobs: int = 1) -> MultiStartResult:
    """Seeded random restarts; returns the best run plus summary statistics.

    Restart k always sees the k-th spawned seed, so results are identical
    for any worker count.
    """
    if num_restarts < 1:
        raise DomainError("num_restarts must be >= 1")
    root = np.random.SeedSequence(config.rng_seed if seed is None else seed)
    jobs = [(n_uavs, child, config, density, params, init_height_max)
            for child in root.spawn(num_restarts)]
    if n_jobs > 1 and num_restarts > 1:
        with ProcessPoolExecutor(max_workers=n_jobs) as pool:
            reports = list(pool.map(_run_one_restart, jobs))
    else:
        reports = [_run_one_restart(j) for j in jobs]
    finals = np.array([r.final_power() for r in reports])
    best_index = int(np.argmin(finals))
    return MultiStartResult(best=reports[best_index], best_index=best_index,
                            final_powers=finals,
                            mean_power=float(finals.mean()),
                            std_power=float(finals.std()),
                            reports=tuple(reports))
