"""Sequential solving over a lambda grid with warm-started screening.

Each grid point is warm-started from the previous coefficients, and for
the gap rules the previous (beta, theta) pair seeds one sequential
screen before the first pass: the gap sphere/dome is simply rebuilt at
the new lambda, which stays safe even when the previous solve was only
approximate.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .design_matrix import DesignMatrix
from .problem import (DualPoint, GapCertificate, LassoProblem, duality_gap)
from .regions import (region_gap_dome, region_gap_sphere, screen, Sphere)
from .solver import Rule, SolverConfig, SolverState, solve


@dataclass
class PathResult:
    lambdas: np.ndarray
    betas: np.ndarray                      # shape (T, p)
    certs: list[GapCertificate]
    traces: list[list[tuple[int, int, float, float]]]
    timings: list[float]                   # seconds per grid point
    converged: np.ndarray                  # bool per grid point
    states: list[SolverState] = field(default_factory=list)


def sequential_radius_sq(r_prev_sq: float, lam_prev: float, lam_t: float,
                         resid_norm_sq: float, theta_norm_sq: float) -> float:
    """Gap-sphere squared radius at lam_t from the one at lam_prev.

    Exact identity (same (beta, theta) pair, new lambda):
    r_t^2 = (lam_prev/lam_t) r_prev^2
            + (1 - lam_t/lam_prev) |X beta - y|^2 / lam_t^2
            - (lam_prev/lam_t - 1) |theta|^2.
    Must agree with 2 G_{lam_t} / lam_t^2 evaluated directly.
    """
    if lam_t > lam_prev:
        raise ValueError("lam_t must not exceed lam_prev")
    ratio = lam_prev / lam_t
    return (ratio * r_prev_sq
            + (1.0 - lam_t / lam_prev) * resid_norm_sq / lam_t ** 2
            - (ratio - 1.0) * theta_norm_sq)


def run_path(X: DesignMatrix, y: np.ndarray, grid: np.ndarray,
             config: SolverConfig) -> PathResult:
    """Solve the Lasso along ``grid`` (non-increasing lambdas).

    Non-converged grid points are recorded and the path continues: an
    approximate (beta, theta) still yields a valid, merely larger,
    sequential gap region for the next lambda.
    """
    grid = np.asarray(grid, dtype=np.float64)
    if grid.size == 0:
        raise ValueError("empty lambda grid")
    if np.any(np.diff(grid) > 0):
        raise ValueError("grid must be non-increasing")
    p = X.n_cols
    betas = np.zeros((grid.size, p))
    certs: list[GapCertificate] = []
    traces = []
    timings = []
    states = []
    conv = np.zeros(grid.size, dtype=bool)

    prev_beta: np.ndarray | None = None
    prev_theta: DualPoint | None = None
    prev_resid: np.ndarray | None = None

    for t, lam in enumerate(grid):
        t0 = time.perf_counter()
        prob = LassoProblem(X, y, lam)
        warm = None if prev_beta is None else prev_beta
        active0 = None
        if (prev_theta is not None and not prev_theta.interpolating
                and config.rule in (Rule.GAP_SPHERE, Rule.GAP_DOME)):
            # sequential screen: previous pair, region rebuilt at lam_t
            if config.rule is Rule.GAP_SPHERE:
                region = region_gap_sphere(prob, prev_beta, prev_theta,
                                           residual=prev_resid)
            else:
                region = region_gap_dome(prob, prev_beta, prev_theta,
                                         residual=prev_resid)
            active0 = screen(region, X).active_set
        beta, cert, state = solve(prob, config, warm_beta=warm,
                                  active0=active0)
        timings.append(time.perf_counter() - t0)
        betas[t] = beta
        certs.append(cert)
        traces.append(state.screen_trace)
        states.append(state)
        conv[t] = state.converged
        prev_beta = beta
        prev_theta = state.theta
        prev_resid = state.residual

    return PathResult(lambdas=grid, betas=betas, certs=certs, traces=traces,
                      timings=timings, converged=conv, states=states)
