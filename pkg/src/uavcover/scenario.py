"""Flat key-value scenario files driving the command-line runner.

The format is deliberately plain text so experiment configs review well:
one ``key = value`` per line, ``#`` comments, length units spelled out in
the key names.  Unknown keys are rejected; omitted keys fall back to the
documented defaults.  ``write_scenario`` emits a canonical form that
parses back to an identical Scenario.
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace

from .errors import ScenarioError

__all__ = ["Scenario", "parse_scenario", "parse_scenario_text",
           "write_scenario", "scenario_text"]

EXPERIMENTS = ("lloyd-a", "lloyd-b", "kss", "msbd", "analytic",
               "brute-force", "sweep")
DENSITY_KINDS = ("uniform", "gaussian-mixture")
POWER_MODES = ("normalized", "physical")


@dataclass(frozen=True)
class Scenario:
    experiment: str
    region_polygon_m: tuple   # ((x, y), ...)
    density_kind: str = "uniform"
    mixture: tuple = ()       # ((weight, cx_m, cy_m, sigma), ...)
    sigma_scale: float = 1.0
    alpha: float = 2.0
    kappa: float = 1.0
    h_min_m: float = 25.0
    power_mode: str = "normalized"
    beta0: float = 1.0
    n_uavs: tuple = ()
    restarts: int = 1
    seed: int = 0
    grid_n: int = 512
    init_height_max_m: float = 100.0
    step_delta_m: float | None = None
    stop_epsilon: float = 1e-5
    max_outer_iterations: int = 500
    max_halvings: int = 40
    n_jobs: int = 1
    out_dir: str = "out"
    packing_file: str | None = None
    theta_hpbw_deg: float = 120.0
    gamma_list: tuple = (1, 2, 3)
    kappa_list: tuple = (1.0,)
    hex_area_list_m2: tuple = (1.0,)
    bf_samples: int = 5000


_REQUIRED = ("experiment", "region_polygon_m")


def _parse_pairs(text: str, key: str, width: int) -> tuple:
    rows = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        vals = [v.strip() for v in part.split(",")]
        if len(vals) != width:
            raise ScenarioError(key, f"expected {width} comma-separated numbers "
                                     f"per ';'-separated entry, got '{part}'")
        try:
            rows.append(tuple(float(v) for v in vals))
        except ValueError:
            raise ScenarioError(key, f"non-numeric entry '{part}'") from None
    return tuple(rows)


def _parse_value(key: str, raw: str):
    raw = raw.strip()
    try:
        if key == "region_polygon_m":
            return _parse_pairs(raw, key, 2)
        if key == "mixture":
            return _parse_pairs(raw, key, 4)
        if key in ("experiment", "density_kind", "power_mode", "out_dir"):
            return raw
        if key == "packing_file":
            return raw or None
        if key == "step_delta_m":
            return float(raw) if raw else None
        if key == "n_uavs":
            return tuple(int(v) for v in raw.split(",") if v.strip())
        if key == "gamma_list":
            return tuple(int(v) for v in raw.split(",") if v.strip())
        if key in ("kappa_list", "hex_area_list_m2"):
            return tuple(float(v) for v in raw.split(",") if v.strip())
        if key in ("restarts", "seed", "grid_n", "max_outer_iterations",
                   "max_halvings", "bf_samples", "n_jobs"):
            return int(raw)
        if key in ("sigma_scale", "alpha", "kappa", "h_min_m", "beta0",
                   "init_height_max_m", "stop_epsilon", "theta_hpbw_deg"):
            return float(raw)
    except ScenarioError:
        raise
    except ValueError:
        raise ScenarioError(key, f"cannot parse value '{raw}'") from None
    raise ScenarioError(key, "unknown key")


def parse_scenario_text(text: str) -> Scenario:
    known = {f.name for f in fields(Scenario)}
    seen: dict = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ScenarioError(f"line {lineno}", f"expected 'key = value', got '{line}'")
        key, raw = (s.strip() for s in line.split("=", 1))
        if key not in known:
            raise ScenarioError(key, "unknown key")
        if key in seen:
            raise ScenarioError(key, "duplicate key")
        seen[key] = _parse_value(key, raw)
    for req in _REQUIRED:
        if req not in seen:
            raise ScenarioError(req, "required key is missing")
    scenario = Scenario(**seen)
    _validate(scenario)
    return scenario


def parse_scenario(path) -> Scenario:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ScenarioError("path", f"cannot read scenario file: {exc}") from exc
    return parse_scenario_text(text)


def _validate(s: Scenario):
    if s.experiment not in EXPERIMENTS:
        raise ScenarioError("experiment", f"must be one of {EXPERIMENTS}")
    if len(s.region_polygon_m) < 3:
        raise ScenarioError("region_polygon_m", "polygon needs >= 3 vertices")
    if s.density_kind not in DENSITY_KINDS:
        raise ScenarioError("density_kind", f"must be one of {DENSITY_KINDS}")
    if s.density_kind == "gaussian-mixture" and not s.mixture:
        raise ScenarioError("mixture", "gaussian-mixture density needs mixture rows")
    if s.power_mode not in POWER_MODES:
        raise ScenarioError("power_mode", f"must be one of {POWER_MODES}")
    if s.alpha < 1.0:
        raise ScenarioError("alpha", "path-loss exponent must be >= 1")
    if s.kappa < 0.0:
        raise ScenarioError("kappa", "antenna exponent must be >= 0")
    if s.h_min_m <= 0.0:
        raise ScenarioError("h_min_m", "minimum height must be positive")
    if s.beta0 <= 0.0:
        raise ScenarioError("beta0", "must be positive")
    if s.sigma_scale <= 0.0:
        raise ScenarioError("sigma_scale", "must be positive")
    if s.restarts < 1:
        raise ScenarioError("restarts", "must be >= 1")
    if s.grid_n < 8:
        raise ScenarioError("grid_n", "grid resolution must be >= 8")
    if s.stop_epsilon <= 0.0:
        raise ScenarioError("stop_epsilon", "must be positive")
    if s.max_outer_iterations < 1 or s.max_halvings < 1:
        raise ScenarioError("max_outer_iterations", "iteration limits must be >= 1")
    if s.n_jobs < 1:
        raise ScenarioError("n_jobs", "must be >= 1")
    if not 0.0 < s.theta_hpbw_deg < 180.0:
        raise ScenarioError("theta_hpbw_deg", "must lie in (0, 180)")
    if s.init_height_max_m <= 0.0:
        raise ScenarioError("init_height_max_m", "must be positive")
    if s.bf_samples < 2:
        raise ScenarioError("bf_samples", "needs at least 2 sweep samples")

    needs_n = s.experiment in ("lloyd-a", "lloyd-b", "kss", "sweep")
    if needs_n and not s.n_uavs:
        raise ScenarioError("n_uavs", f"experiment '{s.experiment}' needs n_uavs")
    if s.experiment == "msbd" and not s.n_uavs and not s.packing_file:
        raise ScenarioError("n_uavs", "msbd needs n_uavs or a packing_file")
    if any(n < 1 for n in s.n_uavs):
        raise ScenarioError("n_uavs", "UAV counts must be >= 1")
    if s.experiment in ("lloyd-a", "lloyd-b", "sweep") and s.kappa < 1.0:
        raise ScenarioError(
            "kappa", "directional optimizers require kappa >= 1")
    if s.experiment in ("analytic", "brute-force"):
        if any(g not in (1, 2, 3) for g in s.gamma_list):
            raise ScenarioError("gamma_list", "closed forms cover gamma in {1, 2, 3}")
        if any(k < 1.0 for k in s.kappa_list):
            raise ScenarioError("kappa_list", "kappa values must be >= 1")
        if any(h <= 0.0 for h in s.hex_area_list_m2):
            raise ScenarioError("hex_area_list_m2", "areas must be positive")
        if not any(k <= 2 * g - 1 for g in s.gamma_list for k in s.kappa_list):
            raise ScenarioError("kappa_list",
                                "no (gamma, kappa) pair satisfies kappa <= 2*gamma-1")


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, tuple):
        if value and isinstance(value[0], tuple):
            return "; ".join(",".join(repr(x) for x in row) for row in value)
        return ",".join(repr(x) if isinstance(x, float) else str(x) for x in value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def scenario_text(s: Scenario) -> str:
    lines = [f"{f.name} = {_fmt(getattr(s, f.name))}" for f in fields(Scenario)]
    return "\n".join(lines) + "\n"


def write_scenario(s: Scenario, path):
    with open(path, "w") as fh:
        fh.write(scenario_text(s))


def with_overrides(s: Scenario, out_dir=None, seed=None, grid_n=None) -> Scenario:
    updates = {}
    if out_dir is not None:
        updates["out_dir"] = str(out_dir)
    if seed is not None:
        updates["seed"] = int(seed)
    if grid_n is not None:
        updates["grid_n"] = int(grid_n)
    if not updates:
        return s
    new = replace(s, **updates)
    _validate(new)
    return new
