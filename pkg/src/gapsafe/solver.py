"""Coordinate descent for a single lambda with interlaced dynamic screening.

Every ``screen_every`` passes the solver builds a dual feasible point
from the residual, constructs the configured safe region, screens the
active set and checks the duality-gap stopping rule.  Screened
coordinates are zeroed and never revisited.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .problem import (DualPoint, GapCertificate, LassoProblem, dual_scale,
                      duality_gap)
from .regions import (Region, SCREEN_SAFETY, gap_radius, mu_values, region_dynamic,
                      region_gap_dome, region_gap_sphere, region_st3,
                      region_static, Sphere, Dome)


class Rule(str, enum.Enum):
    """Screening rule used at solver checkpoints."""

    NONE = "none"
    STATIC = "static"
    DYNAMIC = "dynamic"
    ST3 = "st3"
    GAP_SPHERE = "gap_sphere"
    GAP_DOME = "gap_dome"


@dataclass
class SolverConfig:
    epsilon: float = 1e-8
    max_passes: int = 10_000
    screen_every: int = 10
    rule: Rule = Rule.GAP_SPHERE
    track_active: bool = False
    # optional monitoring hook, called at every checkpoint with the
    # current active-index array; lets callers record compact summaries
    # without the memory cost of track_active on long runs
    on_checkpoint: object = None

    def __post_init__(self):
        self.rule = Rule(self.rule)
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if self.screen_every < 1:
            raise ValueError("screen_every must be at least 1")
        if self.max_passes < 1:
            raise ValueError("max_passes must be at least 1")


@dataclass
class SolverState:
    beta: np.ndarray
    residual: np.ndarray
    active: np.ndarray
    theta: DualPoint | None
    cert: GapCertificate | None
    passes_done: int
    converged: bool
    # (passes completed, active-set size, gap, radius) per checkpoint
    screen_trace: list[tuple[int, int, float, float]] = field(default_factory=list)
    active_history: list[np.ndarray] = field(default_factory=list)


def soft_threshold(u: float, x: float) -> float:
    """sign(x) * (|x| - u)_+ for threshold u >= 0."""
    if u < 0:
        raise ValueError("threshold must be non-negative")
    if x > u:
        return x - u
    if x < -u:
        return x + u
    return 0.0


def cd_pass(state: SolverState, prob: LassoProblem,
            order: np.ndarray | None = None) -> SolverState:
    """One cyclic coordinate-descent pass over the active set (in place)."""
    active = state.active if order is None else np.asarray(order, dtype=np.int64)
    if np.any(prob.X.col_norms[active] == 0.0):
        raise RuntimeError("zero-norm column in active set")
    _run_pass(prob.X, state.beta, state.residual, active, prob.lam)
    state.passes_done += 1
    return state


def _run_pass(X, beta, rho, active, lam):
    if X.is_sparse:
        mat = X.raw()
        _kernels.cd_pass_csc(mat.data, mat.indices, mat.indptr, X.n_base,
                             beta, rho, active, lam, X.col_norms_sq,
                             X.tail_scale)
    else:
        _kernels.cd_pass_dense(X.raw(), beta, rho, active, lam,
                               X.col_norms_sq, X.tail_scale)


def _make_region(rule: Rule, prob: LassoProblem, beta: np.ndarray,
                 theta: DualPoint, rho: np.ndarray,
                 gap: float) -> Region | None:
    if rule is Rule.NONE:
        return None
    if rule is Rule.STATIC:
        return region_static(prob)
    if rule is Rule.DYNAMIC:
        return region_dynamic(prob, theta)
    if rule is Rule.ST3:
        return region_st3(prob, theta)
    if rule is Rule.GAP_SPHERE:
        return region_gap_sphere(prob, beta, theta, gap=gap)
    if rule is Rule.GAP_DOME:
        return region_gap_dome(prob, beta, theta, residual=rho)
    raise ValueError(f"unknown rule {rule}")


def _trace_radius(rule: Rule, region: Region | None, prob: LassoProblem,
                  gap: float) -> float:
    if rule in (Rule.NONE, Rule.GAP_SPHERE, Rule.GAP_DOME):
        return gap_radius(prob, max(gap, 0.0))
    return region.radius if region is not None else float("nan")


def _solve_at_lambda_max(prob: LassoProblem, config: SolverConfig):
    beta = np.zeros(prob.X.n_cols)
    theta = DualPoint(theta=prob.y / prob.lam, feasibility_margin=0.0)
    cert = GapCertificate(primal=0.5 * prob.y_norm_sq,
                          dual=0.5 * prob.y_norm_sq, gap=0.0)
    if config.rule is Rule.NONE:
        active = np.flatnonzero(prob.X.col_norms > 0)
    else:
        mus = np.abs(prob.X.transpose_dot(theta.theta))
        active = np.flatnonzero(mus >= 1.0 - SCREEN_SAFETY)
    state = SolverState(beta=beta, residual=prob.y.copy(), active=active,
                        theta=theta, cert=cert, passes_done=0, converged=True)
    state.screen_trace.append((0, active.size, 0.0, 0.0))
    if config.track_active:
        state.active_history.append(active.copy())
    if config.on_checkpoint is not None:
        config.on_checkpoint(active)
    return beta, cert, state


def solve(prob: LassoProblem, config: SolverConfig,
          warm_beta: np.ndarray | None = None,
          active0: np.ndarray | None = None):
    """Solve one Lasso problem to duality gap <= config.epsilon.

    Returns (beta, GapCertificate, SolverState); ``state.converged`` is
    False when the pass budget ran out.  ``active0``, when given, must
    be a *safe* active set (e.g. from a sequential screen); coordinates
    outside it are zeroed before the first pass.
    """
    X, lam = prob.X, prob.lam
    if lam >= prob.lambda_max * (1 - 1e-14):
        return _solve_at_lambda_max(prob, config)

    p = X.n_cols
    if warm_beta is None:
        beta = np.zeros(p)
    else:
        beta = np.array(warm_beta, dtype=np.float64)
        if beta.shape != (p,):
            raise ValueError("warm_beta has wrong length")

    if active0 is None:
        active = np.flatnonzero(X.col_norms > 0)
    else:
        active = np.asarray(active0, dtype=np.int64)
        active = active[X.col_norms[active] > 0]
    mask = np.zeros(p, dtype=bool)
    mask[active] = True
    beta[~mask] = 0.0

    rho = prob.y - X.matvec(beta)
    state = SolverState(beta=beta, residual=rho, active=active, theta=None,
                        cert=None, passes_done=0, converged=False)
    f = config.screen_every

    for k in range(1, config.max_passes + 1):
        if f == 1 or k % f == 1:
            # resync residual to bound incremental-update drift
            rho = prob.y - X.matvec(beta)
            state.residual = rho
            if state.active.size == 0:
                # everything screened: beta = 0 is certified
                theta = dual_scale(prob, rho)
                cert = duality_gap(prob, beta, theta, residual=rho)
                state.theta, state.cert = theta, cert
                state.converged = cert.gap <= config.epsilon
                state.screen_trace.append(
                    (state.passes_done, 0, cert.gap,
                     gap_radius(prob, max(cert.gap, 0.0))))
                if config.track_active:
                    state.active_history.append(state.active.copy())
                if config.on_checkpoint is not None:
                    config.on_checkpoint(state.active)
                break
            theta = dual_scale(prob, rho, restrict=state.active)
            pre_gap = duality_gap(prob, beta, theta, residual=rho).gap
            region = _make_region(config.rule, prob, beta, theta, rho, pre_gap)
            if region is not None:
                mus = mu_values(region, X, cols=state.active)
                keep = mus >= 1.0 - SCREEN_SAFETY
                dropped = state.active[~keep]
                if dropped.size:
                    for j in dropped:
                        if beta[j] != 0.0:
                            X.axpy_col(j, beta[j], rho)
                            beta[j] = 0.0
                    state.active = state.active[keep]
            cert = duality_gap(prob, beta, theta, residual=rho)
            state.theta, state.cert = theta, cert
            state.screen_trace.append(
                (state.passes_done, state.active.size, cert.gap,
                 _trace_radius(config.rule, region, prob, cert.gap)))
            if config.track_active:
                state.active_history.append(state.active.copy())
            if config.on_checkpoint is not None:
                config.on_checkpoint(state.active)
            if cert.gap <= config.epsilon:
                state.converged = True
                break
            if state.active.size == 0:
                break
        elif k % 100 == 0:
            rho = prob.y - X.matvec(beta)
            state.residual = rho
        _run_pass(X, beta, rho, state.active, lam)
        state.passes_done += 1

    if not state.converged:
        # pass budget exhausted (or early break): certify the final iterate
        rho = prob.y - X.matvec(beta)
        state.residual = rho
        theta = dual_scale(prob, rho,
                           restrict=state.active if state.active.size else None)
        state.theta = theta
        state.cert = duality_gap(prob, beta, theta, residual=rho)
        state.converged = state.cert.gap <= config.epsilon
    return beta, state.cert, state
