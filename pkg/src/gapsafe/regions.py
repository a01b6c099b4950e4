"""Safe region geometry: spheres, domes, screening tests and constructors.

A safe region is any set certified to contain the dual optimum
theta_hat.  Screening drops column j whenever the support-function test
mu_C(x_j) = max(sigma_C(x_j), sigma_C(-x_j)) < 1.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .design_matrix import DesignMatrix
from .problem import (DualPoint, LassoProblem, duality_gap)


class NumericalInconsistencyError(RuntimeError):
    """Raised when a computed quantity violates a guaranteed inequality."""


@dataclass(frozen=True)
class Sphere:
    """Ball B(center, radius) in dual space."""

    center: np.ndarray
    radius: float

    def __post_init__(self):
        if not np.isfinite(self.radius) or self.radius < 0:
            raise ValueError("radius must be finite and non-negative")


@dataclass(frozen=True)
class Dome:
    """Ball-and-halfspace intersection B(c, r) & {theta : n^T theta <= n^T c - ratio * r}.

    ``c - ratio * r * normal`` is the projection of the ball center on
    the cutting hyperplane; ratio = -1 recovers the full ball, ratio = 0
    a hemisphere.
    """

    center: np.ndarray
    radius: float
    ratio: float
    normal: np.ndarray

    def __post_init__(self):
        if not np.isfinite(self.radius) or self.radius < 0:
            raise ValueError("radius must be finite and non-negative")
        if abs(self.ratio) > 1 + 1e-12:
            raise ValueError("ratio must lie in [-1, 1]")
        nn = float(np.linalg.norm(self.normal))
        if abs(nn - 1.0) > 1e-9:
            raise ValueError("normal must be a unit vector")


Region = Sphere | Dome


@dataclass(frozen=True)
class ScreenResult:
    """Partition of columns into a safe zero set and a safe active set."""

    zero_set: np.ndarray
    active_set: np.ndarray
    mu: np.ndarray


# ----------------------------------------------------------------------
# Support-function tests
# ----------------------------------------------------------------------

def _sphere_mu_values(s: Sphere, X: DesignMatrix,
                      cols: np.ndarray | None) -> np.ndarray:
    ct = X.transpose_dot(s.center, cols=cols)
    norms = X.col_norms if cols is None else X.col_norms[cols]
    return np.abs(ct) + s.radius * norms


def _dome_mu_values(d: Dome, X: DesignMatrix,
                    cols: np.ndarray | None) -> np.ndarray:
    ct = X.transpose_dot(d.center, cols=cols)
    nt = X.transpose_dot(d.normal, cols=cols)
    norms = X.col_norms if cols is None else X.col_norms[cols]
    r, a = d.radius, min(max(d.ratio, -1.0), 1.0)
    cross = r * np.sqrt(np.maximum(norms ** 2 - nt ** 2, 0.0) * (1.0 - a ** 2))
    # sigma(x): full-ball branch when the ball maximizer already lies in
    # the halfspace, spherical-cap branch otherwise.
    sig_pos = np.where(nt < -a * norms,
                       ct + r * norms,
                       ct - r * a * nt + cross)
    sig_neg = np.where(-nt < -a * norms,
                       -ct + r * norms,
                       -ct + r * a * nt + cross)
    return np.maximum(sig_pos, sig_neg)


def mu_values(region: Region, X: DesignMatrix,
              cols: np.ndarray | None = None) -> np.ndarray:
    """Support-function test values mu_C(x_j) for the given columns."""
    if isinstance(region, Sphere):
        return _sphere_mu_values(region, X, cols)
    if isinstance(region, Dome):
        return _dome_mu_values(region, X, cols)
    raise TypeError(f"unknown region type: {type(region)!r}")


def sphere_mu(s: Sphere, X: DesignMatrix, j: int) -> float:
    """mu for one column: |x_j^T c| + r |x_j|."""
    X._check_col(j)
    return float(_sphere_mu_values(s, X, np.array([j]))[0])


def dome_mu(d: Dome, X: DesignMatrix, j: int) -> float:
    """Closed-form dome support test for one column; <= the sphere value."""
    X._check_col(j)
    return float(_dome_mu_values(d, X, np.array([j]))[0])


# Rounding guard for the mu < 1 test: when the dual pair is essentially
# exact an equicorrelated active column sits exactly on the boundary and
# floating error alone could push its computed mu below 1.  Keeping such
# columns is always safe.
SCREEN_SAFETY = 1e-9


def screen(region: Region, X: DesignMatrix, tol: float = SCREEN_SAFETY,
           cols: np.ndarray | None = None) -> ScreenResult:
    """Partition columns by the safe test mu_C(x_j) < 1 - tol.

    The region must be safe for the target lambda; the constructors
    below guarantee that.
    """
    mus = mu_values(region, X, cols=cols)
    idx = np.arange(X.n_cols) if cols is None else np.asarray(cols)
    zero = mus < 1.0 - tol
    return ScreenResult(zero_set=idx[zero], active_set=idx[~zero], mu=mus)


def distance_outside(region: Region, point: np.ndarray) -> float:
    """Max violation of the region's defining constraints at ``point``.

    Zero iff the point belongs to the region; used by safety audits.
    """
    if isinstance(region, Sphere):
        return max(0.0, float(np.linalg.norm(point - region.center)) - region.radius)
    ball = max(0.0, float(np.linalg.norm(point - region.center)) - region.radius)
    cut = float(region.normal @ point
                - (region.normal @ region.center - region.ratio * region.radius))
    return max(ball, cut, 0.0)


# ----------------------------------------------------------------------
# Region constructors
# ----------------------------------------------------------------------

def region_static(prob: LassoProblem) -> Sphere:
    """Static sphere B(y/lam, |1/lam - 1/lambda_max| * |y|)."""
    r = abs(1.0 / prob.lam - 1.0 / prob.lambda_max) * np.sqrt(prob.y_norm_sq)
    return Sphere(center=prob.y / prob.lam, radius=float(r))


def region_dynamic(prob: LassoProblem, theta: DualPoint) -> Sphere:
    """Residual-based sphere B(y/lam, |theta - y/lam|)."""
    if theta.feasibility_margin < -1e-9:
        raise ValueError("theta must be dual feasible")
    center = prob.y / prob.lam
    r = float(np.linalg.norm(theta.theta - center))
    return Sphere(center=center, radius=r)


def region_st3(prob: LassoProblem, theta: DualPoint) -> Sphere:
    """Dynamic ST3 sphere: the dynamic ball shrunk onto {x_jstar^T theta <= 1}.

    Center steps from y/lam toward the constraint hyperplane of the most
    correlated column; the radius drops by the center-to-plane distance.
    """
    if theta.feasibility_margin < -1e-9:
        raise ValueError("theta must be dual feasible")
    center = prob.y / prob.lam
    big_r = float(np.linalg.norm(theta.theta - center))
    xj = np.zeros(prob.X.n_cols)
    xj[prob.j_star] = 1.0
    col = prob.X.matvec(xj)
    sgn = np.sign(prob.X.col_dot(prob.j_star, prob.y)) or 1.0
    norm_j = prob.X.col_norms[prob.j_star]
    dist = (prob.lambda_max / prob.lam - 1.0) / norm_j
    radicand = big_r ** 2 - dist ** 2
    if radicand < 0:
        if radicand < -1e-10:
            warnings.warn("ST3 radicand negative; clamping radius to 0",
                          RuntimeWarning)
        radicand = 0.0
    new_center = center - (dist / norm_j) * sgn * col
    return Sphere(center=new_center, radius=float(np.sqrt(radicand)))


def region_seq_basic(prob_t: LassoProblem, theta_prev: DualPoint,
                     lam_prev: float) -> Sphere:
    """Basic sequential sphere B(theta_hat_prev, |1/lam_prev - 1/lam_t| |y|).

    Only safe when ``theta_prev`` is the *exact* dual optimum at
    lam_prev; with approximate inputs this rule can discard active
    variables, which is why the path runner never uses it.
    """
    r = abs(1.0 / lam_prev - 1.0 / prob_t.lam) * np.sqrt(prob_t.y_norm_sq)
    return Sphere(center=np.array(theta_prev.theta, dtype=np.float64),
                  radius=float(r))


def gap_radius(prob: LassoProblem, gap: float) -> float:
    """sqrt(2 * gap) / lam, the duality-gap sphere radius."""
    if gap < -1e-10:
        raise NumericalInconsistencyError(
            f"negative duality gap beyond tolerance: {gap}")
    return float(np.sqrt(2.0 * max(gap, 0.0)) / prob.lam)


def region_gap_sphere(prob: LassoProblem, beta: np.ndarray, theta: DualPoint,
                      residual: np.ndarray | None = None,
                      gap: float | None = None) -> Sphere:
    """Gap sphere B(theta, sqrt(2 G(beta, theta)) / lam).

    Safe for any beta and any feasible theta by weak duality; its radius
    shrinks to zero as (beta, theta) approach the optimal pair.
    """
    if gap is None:
        gap = duality_gap(prob, beta, theta, residual=residual).gap
    return Sphere(center=np.array(theta.theta, dtype=np.float64),
                  radius=gap_radius(prob, gap))


def inner_radius(prob: LassoProblem, beta: np.ndarray,
                 residual: np.ndarray | None = None) -> float:
    """Primal-certified lower bound on |theta_hat - y/lam|.

    (1/lam) * sqrt((|y|^2 - |X beta - y|^2 - 2 lam |beta|_1)_+), from
    weak duality applied to the primal value of beta.
    """
    beta = np.asarray(beta, dtype=np.float64)
    if residual is None:
        residual = prob.y - prob.X.matvec(beta)
    val = prob.y_norm_sq - float(np.dot(residual, residual)) \
        - 2.0 * prob.lam * float(np.sum(np.abs(beta)))
    return float(np.sqrt(max(val, 0.0))) / prob.lam


def region_gap_dome(prob: LassoProblem, beta: np.ndarray, theta: DualPoint,
                    residual: np.ndarray | None = None) -> Region:
    """Gap dome: convex hull of the annulus slice that must hold theta_hat.

    Ball center (y/lam + theta)/2 with radius R/2 where
    R = |theta - y/lam|, cut by the hyperplane at ratio
    2 (r_in / R)^2 - 1 with unit normal (y/lam - theta) / R.  Degenerates
    to the point {theta} when R = 0 (only possible at lambda_max).
    """
    if theta.feasibility_margin < -1e-9:
        raise ValueError("theta must be dual feasible")
    yl = prob.y / prob.lam
    diff = yl - theta.theta
    big_r = float(np.linalg.norm(diff))
    if big_r == 0.0:
        return Sphere(center=np.array(theta.theta), radius=0.0)
    r_in = inner_radius(prob, beta, residual=residual)
    if r_in > big_r * (1 + 1e-9) + 1e-12:
        raise NumericalInconsistencyError(
            f"inner radius {r_in} exceeds outer radius {big_r}")
    r_in = min(r_in, big_r)
    ratio = 2.0 * (r_in / big_r) ** 2 - 1.0
    return Dome(center=0.5 * (yl + theta.theta), radius=0.5 * big_r,
                ratio=ratio, normal=diff / big_r)
