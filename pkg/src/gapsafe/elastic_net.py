"""Elastic-Net reduction to an equivalent Lasso on augmented data.

min 0.5 |X b - y|^2 + lam * a |b|_1 + (lam/2)(1 - a) |b|^2 is a Lasso
with design [X; sqrt((1-a) lam) I_p], target [y; 0] and penalty lam * a.
The extra rows are kept implicit through the design matrix tail.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .design_matrix import DesignMatrix
from .problem import LassoProblem


@dataclass(frozen=True)
class ElasticNetProblem:
    X: DesignMatrix
    y: np.ndarray
    lam: float
    alpha_mix: float   # l1 fraction in (0, 1]

    def __post_init__(self):
        if not 0 < self.alpha_mix <= 1:
            raise ValueError("alpha_mix must lie in (0, 1]")
        if self.lam <= 0:
            raise ValueError("lambda must be positive")
        if self.X.tail_weight != 0:
            raise ValueError("X must not already carry a tail")


def to_lasso(en: ElasticNetProblem) -> LassoProblem:
    """Equivalent Lasso over the implicitly augmented design.

    lambda_max of the augmented problem equals the plain |X^T y|_inf
    since the augmented target has a zero tail.
    """
    tail = (1.0 - en.alpha_mix) * en.lam
    if tail == 0.0:
        return LassoProblem(en.X, en.y, en.lam * en.alpha_mix)
    X_aug = en.X.with_tail(tail)
    y_aug = np.concatenate([np.asarray(en.y, dtype=np.float64),
                            np.zeros(en.X.n_cols)])
    return LassoProblem(X_aug, y_aug, en.lam * en.alpha_mix)


def objective(en: ElasticNetProblem, beta: np.ndarray) -> float:
    """Elastic-Net objective at beta."""
    beta = np.asarray(beta, dtype=np.float64)
    resid = en.y - en.X.matvec(beta)
    return (0.5 * float(np.dot(resid, resid))
            + en.lam * en.alpha_mix * float(np.sum(np.abs(beta)))
            + 0.5 * en.lam * (1.0 - en.alpha_mix) * float(np.dot(beta, beta)))


def kkt_residual(en: ElasticNetProblem, beta: np.ndarray) -> float:
    """Max subgradient-optimality violation of the Elastic-Net at beta.

    For nonzero coordinates: |x_j^T (y - X b) - lam (1-a) b_j
    - lam a sign(b_j)|; for zero ones: (|x_j^T (y - X b)| - lam a)_+.
    """
    beta = np.asarray(beta, dtype=np.float64)
    resid = en.y - en.X.matvec(beta)
    corr = en.X.transpose_dot(resid)
    l1 = en.lam * en.alpha_mix
    l2 = en.lam * (1.0 - en.alpha_mix)
    nz = beta != 0.0
    viol = np.maximum(np.abs(corr) - l1, 0.0)
    grad = corr - l2 * beta - l1 * np.sign(beta)
    viol[nz] = np.abs(grad[nz])
    return float(np.max(viol)) if viol.size else 0.0
