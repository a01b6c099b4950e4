"""Lasso problem definition, objectives, duality gap and dual points."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .design_matrix import DesignMatrix


class InfeasibleDualError(ValueError):
    """Raised when a dual point violates |X^T theta|_inf <= 1 beyond slack."""


@dataclass(frozen=True)
class DualPoint:
    """A dual feasible point theta with its feasibility margin 1 - |X^T theta|_inf."""

    theta: np.ndarray
    feasibility_margin: float
    interpolating: bool = False


@dataclass(frozen=True)
class GapCertificate:
    """Primal value, dual value and their difference (the duality gap)."""

    primal: float
    dual: float
    gap: float


class LassoProblem:
    """(X, y, lambda) bundle with cached lambda_max = |X^T y|_inf.

    Requires 0 < lam <= lambda_max: for larger lam the zero vector is
    optimal and there is nothing to solve.
    """

    def __init__(self, X: DesignMatrix, y: np.ndarray, lam: float):
        y = np.ascontiguousarray(y, dtype=np.float64)
        if y.shape != (X.n_rows,):
            raise ValueError(f"y has length {y.shape}, expected ({X.n_rows},)")
        if lam <= 0:
            raise ValueError("lambda must be positive")
        self.X = X
        self.y = y
        self.lam = float(lam)
        self.lambda_max, self.j_star = X.max_abs_correlation(y)
        if self.lam > self.lambda_max * (1 + 1e-12):
            raise ValueError(
                f"lambda={lam} exceeds lambda_max={self.lambda_max}")
        self.y_norm_sq = float(np.dot(y, y))


def primal_value(prob: LassoProblem, beta: np.ndarray,
                 residual: np.ndarray | None = None) -> float:
    """0.5 * |X beta - y|^2 + lam * |beta|_1.

    ``residual``, when supplied, must equal y - X beta (caller-maintained).
    """
    beta = np.asarray(beta, dtype=np.float64)
    if beta.shape != (prob.X.n_cols,):
        raise ValueError("beta has wrong length")
    if residual is None:
        residual = prob.y - prob.X.matvec(beta)
    return 0.5 * float(np.dot(residual, residual)) \
        + prob.lam * float(np.sum(np.abs(beta)))


def dual_value(prob: LassoProblem, theta: DualPoint) -> float:
    """0.5 * |y|^2 - (lam^2 / 2) * |theta - y/lam|^2."""
    if theta.feasibility_margin < -1e-9:
        raise InfeasibleDualError(
            f"dual point infeasible: margin={theta.feasibility_margin}")
    diff = theta.theta - prob.y / prob.lam
    return 0.5 * prob.y_norm_sq - 0.5 * prob.lam ** 2 * float(np.dot(diff, diff))


def duality_gap(prob: LassoProblem, beta: np.ndarray, theta: DualPoint,
                residual: np.ndarray | None = None) -> GapCertificate:
    """Gap certificate P(beta) - D(theta); gap <= eps certifies an eps-solution."""
    p = primal_value(prob, beta, residual=residual)
    d = dual_value(prob, theta)
    return GapCertificate(primal=p, dual=d, gap=p - d)


def make_dual_point(X: DesignMatrix, theta: np.ndarray,
                    interpolating: bool = False) -> DualPoint:
    """Wrap an arbitrary vector, computing its feasibility margin exactly."""
    theta = np.ascontiguousarray(theta, dtype=np.float64)
    m, _ = X.max_abs_correlation(theta)
    return DualPoint(theta=theta, feasibility_margin=1.0 - m,
                     interpolating=interpolating)


def dual_scale(prob: LassoProblem, residual: np.ndarray,
               restrict: np.ndarray | None = None) -> DualPoint:
    """Dual feasible point from the current residual rho = y - X beta.

    theta = alpha * rho with alpha = clip(y^T rho / (lam |rho|^2),
    +-1 / |X^T rho|_inf); this is the projection of y/lam onto
    the dual feasible set intersected with span(rho).

    ``restrict`` must be a *safe* active set for the restricted infinity
    norm to be exact; the caller is responsible for that guarantee.
    """
    rho = np.ascontiguousarray(residual, dtype=np.float64)
    rho_sq = float(np.dot(rho, rho))
    if rho_sq == 0.0:
        # beta interpolates y exactly; theta = 0 is feasible with D = 0.
        return DualPoint(theta=np.zeros_like(rho), feasibility_margin=1.0,
                         interpolating=True)
    corr, _ = prob.X.max_abs_correlation(rho, restrict=restrict)
    raw = float(np.dot(prob.y, rho)) / (prob.lam * rho_sq)
    if corr > 0.0:
        bound = 1.0 / corr
        alpha = min(max(raw, -bound), bound)
    else:
        alpha = raw
    theta = alpha * rho
    return DualPoint(theta=theta, feasibility_margin=1.0 - abs(alpha) * corr)


def lambda_grid(lambda_max: float, T: int, delta: float) -> np.ndarray:
    """Geometric grid lam_t = lambda_max * 10^(-delta * t / (T - 1))."""
    if T < 2:
        raise ValueError("T must be at least 2")
    if delta <= 0:
        raise ValueError("delta must be positive")
    t = np.arange(T)
    return lambda_max * 10.0 ** (-delta * t / (T - 1))


def static_useless_threshold(prob: LassoProblem) -> tuple[float, float]:
    """Thresholds on lam/lambda_max below which screening degrades.

    Returns (static threshold, dynamic threshold):
    - static: min_j (|x_j| |y| + |x_j^T y|) / (|x_j| |y| + lambda_max);
      below it the static sphere screens nothing.
    - dynamic: min_j |x_j^T y| / lambda_max; below it the residual-based
      dynamic sphere is inefficient.
    """
    xty = np.abs(prob.X.transpose_dot(prob.y))
    norms = prob.X.col_norms
    y_norm = float(np.sqrt(prob.y_norm_sq))
    scale = norms * y_norm
    static_thr = float(np.min((scale + xty) / (scale + prob.lambda_max)))
    dynamic_thr = float(np.min(xty) / prob.lambda_max)
    return static_thr, dynamic_thr
