import numpy as np
import pytest
from numpy.testing import assert_allclose

from uavcover import (DensityField, Deployment, DomainError, LloydConfig,
                      PolygonRegion, PowerParams, build_grid, lloyd_step,
                      multi_start, optimize, solve_common_height_closed)
from uavcover.lloyd import random_deployment

P15 = PowerParams(alpha=2.0, kappa=1.0, h_min=0.05)


def uniform_setup(n_grid=96, box=1.0):
    region = PolygonRegion.rectangle(0, 0, box, box)
    grid = build_grid(region, n_grid)
    return DensityField.uniform(region).on_grid(grid)


def test_step_requires_feasible_heights():
    raster = uniform_setup()
    cfg = LloydConfig(variant="B")
    dep = Deployment([[0.5, 0.5]], [0.01])
    with pytest.raises(DomainError):
        lloyd_step(dep, cfg, raster, P15)


def test_step_never_increases_power():
    raster = uniform_setup()
    cfg = LloydConfig(variant="B", rng_seed=1)
    rng = np.random.default_rng(1)
    dep = Deployment(rng.uniform(0.1, 0.9, (5, 2)), rng.uniform(0.1, 0.9, 5))
    from uavcover import assign_cells, average_power
    p0 = average_power(dep, assign_cells(dep, raster.grid, P15), raster, P15).total
    out = lloyd_step(dep, cfg, raster, P15)
    assert out.power <= p0
    assert np.all(out.deployment.heights >= P15.h_min)


def test_step_at_pinned_critical_point_leaves_deployment_unchanged():
    # centered UAV pushed to the height floor: no strict improvement exists
    raster = uniform_setup(128)
    params = PowerParams(alpha=2.0, kappa=1.0, h_min=0.6)
    cfg = LloydConfig(variant="B")
    dep = Deployment([[0.5, 0.5]], [0.6])
    out = lloyd_step(dep, cfg, raster, params)
    assert not out.moved
    assert out.deployment is dep
    report = optimize(dep, cfg, raster, params)
    assert report.iterations == 1
    assert report.converged


def test_single_uav_moves_toward_center():
    raster = uniform_setup(128)
    cfg = LloydConfig(variant="B", rng_seed=0)
    dep = Deployment([[0.15, 0.8]], [0.4])
    report = optimize(dep, cfg, raster, P15)
    assert_allclose(report.final.ground[0], [0.5, 0.5], atol=0.02)
    assert report.converged


def test_variant_a_keeps_heights_common():
    raster = uniform_setup()
    cfg = LloydConfig(variant="A", rng_seed=3, max_outer_iterations=60)
    rng = np.random.default_rng(3)
    dep = Deployment(rng.uniform(0.1, 0.9, (6, 2)), np.full(6, 0.4))
    report = optimize(dep, cfg, raster, P15)
    for heights in report.height_trace:
        assert np.ptp(heights) == 0.0
    assert report.height_std == 0.0


def test_variant_a_rejects_unequal_initial_heights():
    raster = uniform_setup()
    cfg = LloydConfig(variant="A")
    dep = Deployment([[0.2, 0.2], [0.8, 0.8]], [0.3, 0.4])
    with pytest.raises(DomainError):
        optimize(dep, cfg, raster, P15)


def test_trace_monotone_and_heights_feasible():
    raster = uniform_setup()
    for seed in range(5):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 9))
        dep = Deployment(rng.uniform(0.05, 0.95, (n, 2)),
                         rng.uniform(0.05, 0.5, n))
        cfg = LloydConfig(variant="B", rng_seed=seed, max_outer_iterations=40)
        report = optimize(dep, cfg, raster, P15)
        assert np.all(np.diff(report.power_trace) <= 0.0)
        for heights in report.height_trace:
            assert np.all(heights >= P15.h_min)


def test_multi_start_single_restart_equals_optimize():
    raster = uniform_setup()
    cfg = LloydConfig(variant="B", rng_seed=9, max_outer_iterations=30)
    result = multi_start(3, 1, 9, cfg, raster, P15, init_height_max=0.5)
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(9).spawn(1)[0]))
    initial = random_deployment(3, raster, P15, rng, 0.5, common_height=False)
    direct = optimize(initial, cfg, raster, P15)
    assert_allclose(result.best.power_trace, direct.power_trace)
    assert_allclose(result.best.final.ground, direct.final.ground)


def test_multi_start_is_deterministic_and_parallel_invariant():
    raster = uniform_setup(64)
    cfg = LloydConfig(variant="B", rng_seed=4, max_outer_iterations=25)
    a = multi_start(4, 3, 4, cfg, raster, P15, init_height_max=0.5, n_jobs=1)
    b = multi_start(4, 3, 4, cfg, raster, P15, init_height_max=0.5, n_jobs=2)
    assert np.array_equal(a.final_powers, b.final_powers)
    for ra, rb in zip(a.reports, b.reports):
        assert np.array_equal(ra.power_trace, rb.power_trace)
        assert np.array_equal(ra.final.ground, rb.final.ground)
        assert np.array_equal(ra.final.heights, rb.final.heights)


def test_variant_b_at_least_as_good_as_variant_a():
    raster = uniform_setup(96)
    rng = np.random.default_rng(12)
    n = 9
    ground = rng.uniform(0.05, 0.95, (n, 2))
    h0 = np.full(n, 0.3)
    cfg_a = LloydConfig(variant="A", rng_seed=12)
    cfg_b = LloydConfig(variant="B", rng_seed=12)
    pa = optimize(Deployment(ground, h0), cfg_a, raster, P15).final_power()
    pb = optimize(Deployment(ground, h0), cfg_b, raster, P15).final_power()
    assert pb <= pa * 1.005


def test_single_uav_on_hexagon_matches_analytic_height():
    area = 1.0
    region = PolygonRegion.regular_hexagon(area)
    grid = build_grid(region, 256)
    raster = DensityField.uniform(region).on_grid(grid)
    params = PowerParams(alpha=1.0, kappa=1.0, h_min=0.02)   # gamma = 1
    cfg = LloydConfig(variant="B", rng_seed=2)
    dep = Deployment([[0.05, -0.04]], [0.2])
    report = optimize(dep, cfg, raster, params)
    h_star = solve_common_height_closed(1, 1.0, area).h_star
    assert abs(report.final.heights[0] - h_star) / h_star < 0.02
    assert np.linalg.norm(report.final.ground[0]) < 0.02


def test_restart_scatter_is_tight_on_uniform_square():
    raster = uniform_setup(64)
    cfg = LloydConfig(variant="B", rng_seed=21, max_outer_iterations=200)
    result = multi_start(4, 8, 21, cfg, raster, P15,
                         init_height_max=0.4, n_jobs=2)
    best = result.final_powers.min()
    median = float(np.median(result.final_powers))
    assert (median - best) / median < 0.02


def test_config_validation():
    with pytest.raises(DomainError):
        LloydConfig(variant="C")
    with pytest.raises(DomainError):
        LloydConfig(stop_threshold=0.0)
    with pytest.raises(DomainError):
        LloydConfig(initial_step=-1.0)
