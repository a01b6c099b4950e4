import numpy as np
import pytest
import scipy.sparse as sp

from gapsafe import DesignMatrix, LassoProblem, SolverConfig, dual_scale, solve


def make_instance(seed, n=30, p=60, sparse=False, density=0.3,
                  lam_frac=0.3):
    """Random (problem, rng) pair; lam = lam_frac * lambda_max."""
    rng = np.random.default_rng(seed)
    if sparse:
        mask = rng.random((n, p)) < density
        X = DesignMatrix(sp.csc_matrix(rng.standard_normal((n, p)) * mask))
    else:
        X = DesignMatrix(rng.standard_normal((n, p)))
    y = rng.standard_normal(n)
    lam_max, _ = X.max_abs_correlation(y)
    prob = LassoProblem(X, y, lam_frac * lam_max)
    return prob, rng


def partial_iterate(prob, passes=5):
    """(beta, residual, theta) after a few screening-free CD passes."""
    cfg = SolverConfig(epsilon=1e-300, max_passes=passes, rule="none",
                      screen_every=max(passes, 1))
    beta, cert, state = solve(prob, cfg)
    theta = dual_scale(prob, state.residual)
    return beta, state.residual, theta


def feasible_point(prob, rng, scale=0.9):
    """Random dual feasible point with margin >= 1 - scale."""
    z = rng.standard_normal(prob.X.n_rows)
    m, _ = prob.X.max_abs_correlation(z)
    theta = z * (scale * rng.random() / m) if m > 0 else z
    return dual_scale_point(prob, theta)


def dual_scale_point(prob, theta):
    from gapsafe import make_dual_point
    return make_dual_point(prob.X, theta)
