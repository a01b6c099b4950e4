"""Safe screening rules for the Lasso built on duality-gap certificates.

Spheres and domes whose radii shrink with the duality gap dynamically
eliminate variables inside a coordinate-descent solver, along with the
classical static/dynamic rules they improve on, a ground-truth oracle
and a benchmarking harness.
"""

from .design_matrix import DesignMatrix
from .elastic_net import (ElasticNetProblem, kkt_residual, objective,
                          to_lasso)
from .path import PathResult, run_path, sequential_radius_sq
from .problem import (DualPoint, GapCertificate, InfeasibleDualError,
                      LassoProblem, dual_scale, dual_value, duality_gap,
                      lambda_grid, make_dual_point, primal_value,
                      static_useless_threshold)
from .regions import (Dome, NumericalInconsistencyError, ScreenResult, Sphere,
                      distance_outside, dome_mu, mu_values, region_dynamic,
                      region_gap_dome, region_gap_sphere, region_seq_basic,
                      region_st3, region_static, screen, sphere_mu)
from .solver import Rule, SolverConfig, SolverState, cd_pass, soft_threshold, solve
from .oracle import (OracleFailure, ReferenceSolution, audit_safety,
                     equicorrelation, reference_solve,
                     support_identification_pass)
from .datasets import load_dataset, save_dataset, synth_dataset

__all__ = [
    "DesignMatrix", "LassoProblem", "DualPoint", "GapCertificate",
    "ElasticNetProblem", "to_lasso", "objective", "kkt_residual",
    "PathResult", "run_path",
    "sequential_radius_sq", "dual_scale", "dual_value", "duality_gap",
    "lambda_grid", "make_dual_point", "primal_value",
    "static_useless_threshold", "Sphere", "Dome", "ScreenResult",
    "sphere_mu", "dome_mu", "mu_values", "screen", "distance_outside",
    "region_static", "region_dynamic", "region_st3", "region_seq_basic",
    "region_gap_sphere", "region_gap_dome", "Rule", "SolverConfig",
    "SolverState", "soft_threshold", "cd_pass", "solve", "reference_solve",
    "equicorrelation", "audit_safety", "support_identification_pass",
    "ReferenceSolution", "OracleFailure", "InfeasibleDualError",
    "NumericalInconsistencyError", "load_dataset", "save_dataset",
    "synth_dataset",
]

__version__ = "0.1.0"
