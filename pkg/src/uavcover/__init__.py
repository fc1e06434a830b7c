"""Power-optimal placement of UAV base stations with directional antennas.

The package splits into the transmit-power model (`power`), generalized
Voronoi cell assignment (`tessellation`), density quadrature and
gradients (`density`), the alternating descent optimizers (`lloyd`),
closed-form asymptotic heights over hexagonal cells (`hexagon`),
comparison baselines (`baselines`), and the scenario-driven command line
(`scenario`, `cli`).
"""

from .baselines import (Packing, cross_evaluate, disk_coverage_fraction,
                        hex_lattice_packing, kss_optimize, msbd_deploy,
                        read_packing, write_packing)
from .density import (DensityField, DensityRaster, PowerReport, average_power,
                      height_gradient, position_gradient)
from .errors import DomainError, NumericError, ScenarioError
from .hexagon import (AuditRow, CommonHeightSolution, HexMoments,
                      brute_force_height, hex_moments, hexagon_cell_power,
                      optimal_average_power, power_formula_audit,
                      solve_common_height_closed, solve_common_height_numeric,
                      triangle_nodes)
from .lloyd import (LloydConfig, MultiStartResult, RunReport, lloyd_step,
                    multi_start, optimize, random_deployment)
from .power import (LinkBudget, LosParams, PowerParams, directivity,
                    hpbw_degrees, link_beta0, regularized_los, tx_power)
from .region import Grid, PolygonRegion, build_grid
from .scenario import Scenario, parse_scenario, parse_scenario_text, write_scenario
from .tessellation import (AssignmentGrid, Deployment, DominanceRegion,
                           assign_cells, assignment_to_csv, assignment_to_ppm,
                           cell_area_fractions, dominance_region, height_ratio)

__version__ = "0.1.0"
