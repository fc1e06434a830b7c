"""Scenario-driven command line: optimize, baseline, analytic, brute-force, sweep.

Every run writes its artifacts plus a manifest (seed, scenario hash, tool
version) sufficient to reproduce the numbers bit for bit.  Files are
written atomically (temp then rename) and all floats are emitted at full
precision, so rerunning a scenario with the same seed produces
byte-identical outputs.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile

import numpy as np

from .baselines import (cross_evaluate, disk_coverage_fraction,
                        hex_lattice_packing, kss_optimize, msbd_deploy,
                        read_packing)
from .density import DensityField
from .errors import DomainError, NumericError, ScenarioError
from .hexagon import (brute_force_height, optimal_average_power,
                      power_formula_audit, solve_common_height_closed)
from .lloyd import LloydConfig, multi_start, optimize, random_deployment
from .power import PowerParams
from .region import PolygonRegion, build_grid
from .scenario import Scenario, parse_scenario, scenario_text, with_overrides
from .tessellation import assign_cells, assignment_to_csv, assignment_to_ppm

__version__ = "0.1.0"

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NUMERIC = 3


def _atomic_write(path: str, data: str | bytes):
    mode = "wb" if isinstance(data, bytes) else "w"
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    try:
        with os.fdopen(fd, mode) as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _csv(rows: list[list], header: list[str]) -> str:
    def cell(v):
        if isinstance(v, float):
            return repr(float(v))
        return str(v)
    lines = [",".join(header)]
    lines.extend(",".join(cell(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def _context(s: Scenario):
    region = PolygonRegion(np.array(s.region_polygon_m))
    if s.density_kind == "uniform":
        field = DensityField.uniform(region)
    else:
        weights = [row[0] for row in s.mixture]
        means = [(row[1], row[2]) for row in s.mixture]
        sigmas = [row[3] for row in s.mixture]
        field = DensityField.gaussian_mixture(region, weights, means, sigmas,
                                              sigma_scale=s.sigma_scale)
    grid = build_grid(region, s.grid_n)
    raster = field.on_grid(grid)
    params = PowerParams(alpha=s.alpha, kappa=s.kappa, h_min=s.h_min_m,
                         beta0=s.beta0,
                         normalized=(s.power_mode == "normalized"))
    return region, grid, raster, params


def _config(s: Scenario, variant: str) -> LloydConfig:
    return LloydConfig(variant=variant, initial_step=s.step_delta_m,
                       stop_threshold=s.stop_epsilon,
                       max_outer_iterations=s.max_outer_iterations,
                       max_halvings=s.max_halvings, rng_seed=s.seed)


def _write_manifest(s: Scenario, out: str):
    text = scenario_text(s)
    manifest = {
        "tool": "uavcover",
        "version": __version__,
        "seed": s.seed,
        "grid_n": s.grid_n,
        "scenario_sha256": hashlib.sha256(text.encode()).hexdigest(),
        "scenario": text,
    }
    _atomic_write(os.path.join(out, "manifest.json"),
                  json.dumps(manifest, sort_keys=True, indent=2) + "\n")


def _write_deployment(dep, path: str):
    rows = [[n, float(x), float(y), float(h)]
            for n, ((x, y), h) in enumerate(zip(dep.ground, dep.heights))]
    _atomic_write(path, _csv(rows, ["n", "x_m", "y_m", "h_m"]))


def _write_cells(dep, grid, params, out: str):
    assignment = assign_cells(dep, grid, params)
    _atomic_write(os.path.join(out, "cells.csv"), assignment_to_csv(assignment))
    _atomic_write(os.path.join(out, "cells.ppm"),
                  assignment_to_ppm(assignment, dep))


def _run_lloyd(s: Scenario, out: str) -> dict:
    _, grid, raster, params = _context(s)
    variant = "A" if s.experiment == "lloyd-a" else "B"
    config = _config(s, variant)
    n = s.n_uavs[0]
    result = multi_start(n, s.restarts, s.seed, config, raster, params,
                         init_height_max=s.init_height_max_m, n_jobs=s.n_jobs)
    rows = [[i, r.final_power(), r.iterations, r.converged, r.height_std]
            for i, r in enumerate(result.reports)]
    _atomic_write(os.path.join(out, "restarts.csv"),
                  _csv(rows, ["restart", "p_bar_final", "iterations",
                              "converged", "height_std"]))
    best = result.best
    trace_rows = [[i, float(p)] for i, p in enumerate(best.power_trace)]
    _atomic_write(os.path.join(out, "power_trace.csv"),
                  _csv(trace_rows, ["iteration", "p_bar"]))
    _write_deployment(best.final, os.path.join(out, "deployment.csv"))
    _write_cells(best.final, grid, params, out)
    return {"p_bar_best": result.best.final_power()}


def _run_kss(s: Scenario, out: str) -> dict:
    _, grid, raster, params = _context(s)
    config = _config(s, "B")
    n = s.n_uavs[0]
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(s.seed)))
    reports = []
    for _ in range(s.restarts):
        initial = random_deployment(n, raster, params, rng,
                                    s.init_height_max_m, common_height=False)
        reports.append(kss_optimize(initial, config, raster, params))
    finals = np.array([r.final_power() for r in reports])
    best = reports[int(np.argmin(finals))]
    rows = [[i, r.final_power(), r.iterations, r.converged, r.height_std]
            for i, r in enumerate(reports)]
    _atomic_write(os.path.join(out, "restarts.csv"),
                  _csv(rows, ["restart", "p_bar_final", "iterations",
                              "converged", "height_std"]))
    _write_deployment(best.final, os.path.join(out, "deployment.csv"))
    omni = params.with_kappa(0.0)
    _write_cells(best.final, grid, omni, out)
    eval_rows = []
    for kappa_eval in (0.0, s.kappa):
        p_eval = PowerParams(alpha=s.alpha, kappa=kappa_eval, h_min=s.h_min_m,
                             beta0=s.beta0, normalized=False)
        report = cross_evaluate(best.final, grid, raster, p_eval)
        eval_rows.append([kappa_eval, report.total, report.coverage_fraction])
    _atomic_write(os.path.join(out, "cross_eval.csv"),
                  _csv(eval_rows, ["kappa_eval", "p_bar_physical",
                                   "coverage_fraction"]))
    return {"p_bar_best": float(finals.min())}


def _run_msbd(s: Scenario, out: str) -> dict:
    region, grid, raster, params = _context(s)
    if s.packing_file:
        packing = read_packing(s.packing_file)
    else:
        packing = hex_lattice_packing(region, s.n_uavs[0])
    packing.validate(region)
    dep = msbd_deploy(packing, s.theta_hpbw_deg)
    dep = type(dep)(dep.ground, np.maximum(dep.heights, s.h_min_m))
    coverage = disk_coverage_fraction(packing, grid)
    report = cross_evaluate(dep, grid, raster, params)
    _write_deployment(dep, os.path.join(out, "deployment.csv"))
    _write_cells(dep, grid, params, out)
    rows = [[packing.n, packing.radius, s.theta_hpbw_deg,
             float(dep.heights[0]), coverage, report.total]]
    _atomic_write(os.path.join(out, "coverage.csv"),
                  _csv(rows, ["n_disks", "radius_m", "theta_hpbw_deg",
                              "height_m", "disk_coverage_fraction", "p_bar"]))
    return {"coverage": coverage}


def _run_analytic(s: Scenario, out: str) -> dict:
    rows = []
    for gamma in s.gamma_list:
        for kappa in s.kappa_list:
            if not 1.0 <= kappa <= 2.0 * gamma - 1.0:
                continue
            for area in s.hex_area_list_m2:
                sol = solve_common_height_closed(gamma, kappa, area)
                p_phys = optimal_average_power(gamma, kappa, area,
                                               normalized=False)
                rows.append([gamma, kappa, area, sol.c_factor, sol.h_star,
                             sol.p_bar_star, p_phys])
    _atomic_write(os.path.join(out, "analytic.csv"),
                  _csv(rows, ["gamma", "kappa", "area_m2", "c_factor",
                              "h_star_m", "p_star_normalized",
                              "p_star_physical"]))
    audit_rows = [[r.gamma, r.kappa, r.quadrature, r.moment_form,
                   r.display_form, r.rel_gap_moment, r.rel_gap_display,
                   r.note]
                  for r in power_formula_audit()]
    _atomic_write(os.path.join(out, "audit.csv"),
                  _csv(audit_rows, ["gamma", "kappa", "quadrature",
                                    "moment_form", "display_form",
                                    "rel_gap_moment", "rel_gap_display",
                                    "note"]))
    return {"rows": len(rows)}


def _run_brute_force(s: Scenario, out: str) -> dict:
    rows = []
    for gamma in s.gamma_list:
        for kappa in s.kappa_list:
            if not 1.0 <= kappa <= 2.0 * gamma - 1.0:
                continue
            alpha = 2.0 * gamma - kappa
            if alpha < 1.0:
                continue
            for area in s.hex_area_list_m2:
                h_closed = solve_common_height_closed(gamma, kappa, area).h_star
                h_bf = brute_force_height(area, kappa, alpha, s.bf_samples)
                rel = abs(h_bf - h_closed) / h_closed
                rows.append([gamma, kappa, alpha, area, h_closed, h_bf, rel])
    _atomic_write(os.path.join(out, "bruteforce.csv"),
                  _csv(rows, ["gamma", "kappa", "alpha", "area_m2",
                              "h_star_closed_m", "h_bruteforce_m", "rel_gap"]))
    return {"rows": len(rows)}


def _run_sweep(s: Scenario, out: str) -> dict:
    _, grid, raster, params = _context(s)
    config = _config(s, "B")
    rows = []
    for n in s.n_uavs:
        result = multi_start(n, s.restarts, s.seed, config, raster, params,
                             init_height_max=s.init_height_max_m,
                             n_jobs=s.n_jobs)
        best = result.best
        rows.append([n, best.final_power(), result.mean_power,
                     result.std_power, best.height_std, best.iterations,
                     best.converged])
        _write_deployment(best.final,
                          os.path.join(out, f"deployment_n{n}.csv"))
    _atomic_write(os.path.join(out, "summary.csv"),
                  _csv(rows, ["n_uavs", "p_bar_best", "p_bar_mean",
                              "p_bar_std", "height_std", "iterations",
                              "converged"]))
    return {"rows": len(rows)}


_RUNNERS = {
    "lloyd-a": _run_lloyd,
    "lloyd-b": _run_lloyd,
    "kss": _run_kss,
    "msbd": _run_msbd,
    "analytic": _run_analytic,
    "brute-force": _run_brute_force,
    "sweep": _run_sweep,
}

_SUBCOMMAND_EXPERIMENTS = {
    "optimize": ("lloyd-a", "lloyd-b"),
    "baseline": ("kss", "msbd"),
    "analytic": ("analytic",),
    "brute-force": ("brute-force",),
    "sweep": ("sweep",),
}


def run_experiment(s: Scenario) -> dict:
    """Run the scenario's experiment; artifacts land in its out_dir."""
    out = s.out_dir
    os.makedirs(out, exist_ok=True)
    summary = _RUNNERS[s.experiment](s, out)
    _write_manifest(s, out)
    return summary


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="uavcover",
        description="Power-optimal UAV base-station deployments")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _SUBCOMMAND_EXPERIMENTS:
        p = sub.add_parser(name)
        p.add_argument("--scenario", required=True)
        p.add_argument("--out", default=None)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--grid", type=int, default=None)
    args = parser.parse_args(argv)

    try:
        scenario = parse_scenario(args.scenario)
        scenario = with_overrides(scenario, out_dir=args.out, seed=args.seed,
                                  grid_n=args.grid)
        allowed = _SUBCOMMAND_EXPERIMENTS[args.command]
        if scenario.experiment not in allowed:
            raise ScenarioError(
                "experiment",
                f"subcommand '{args.command}' expects one of {allowed}")
        run_experiment(scenario)
    except (ScenarioError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (NumericError, FloatingPointError, ArithmeticError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    print(f"wrote artifacts to {scenario.out_dir}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
