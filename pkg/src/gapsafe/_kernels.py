"""Numba kernels for the column-wise hot loops.

All kernels understand an optional implicit diagonal tail: when
``tail_scale > 0`` every column j has one extra stored entry equal to
``tail_scale`` at row ``n_base + j``.  Vectors then have length
``n_base + p``.  This is how the Elastic-Net augmented design is handled
without materializing the extra rows.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def tdot_dense(X, v, cols, tail_scale, out):
    n = X.shape[0]
    for i in range(cols.size):
        j = cols[i]
        s = 0.0
        for r in range(n):
            s += X[r, j] * v[r]
        if tail_scale > 0.0:
            s += tail_scale * v[n + j]
        out[i] = s


@njit(cache=True)
def tdot_csc(data, indices, indptr, n_base, v, cols, tail_scale, out):
    for i in range(cols.size):
        j = cols[i]
        s = 0.0
        for k in range(indptr[j], indptr[j + 1]):
            s += data[k] * v[indices[k]]
        if tail_scale > 0.0:
            s += tail_scale * v[n_base + j]
        out[i] = s


@njit(cache=True)
def cd_pass_dense(X, beta, rho, active, lam, norms_sq, tail_scale):
    n = X.shape[0]
    for i in range(active.size):
        j = active[i]
        nsq = norms_sq[j]
        g = 0.0
        for r in range(n):
            g += X[r, j] * rho[r]
        if tail_scale > 0.0:
            g += tail_scale * rho[n + j]
        z = beta[j] + g / nsq
        u = lam / nsq
        if z > u:
            nb = z - u
        elif z < -u:
            nb = z + u
        else:
            nb = 0.0
        d = nb - beta[j]
        if d != 0.0:
            beta[j] = nb
            for r in range(n):
                rho[r] -= d * X[r, j]
            if tail_scale > 0.0:
                rho[n + j] -= d * tail_scale


@njit(cache=True)
def cd_pass_csc(data, indices, indptr, n_base, beta, rho, active, lam,
                norms_sq, tail_scale):
    for i in range(active.size):
        j = active[i]
        nsq = norms_sq[j]
        g = 0.0
        for k in range(indptr[j], indptr[j + 1]):
            g += data[k] * rho[indices[k]]
        if tail_scale > 0.0:
            g += tail_scale * rho[n_base + j]
        z = beta[j] + g / nsq
        u = lam / nsq
        if z > u:
            nb = z - u
        elif z < -u:
            nb = z + u
        else:
            nb = 0.0
        d = nb - beta[j]
        if d != 0.0:
            beta[j] = nb
            for k in range(indptr[j], indptr[j + 1]):
                rho[indices[k]] -= d * data[k]
            if tail_scale > 0.0:
                rho[n_base + j] -= d * tail_scale


@njit(cache=True)
def cd_full_pass_plain(X, beta, rho, lam, norms_sq):
    """One cyclic pass over all columns of a dense matrix.

    Kept separate from the screening solver kernels on purpose: this is
    the reference-solution code path and must not share the solver's
    active-set machinery.
    """
    n, p = X.shape
    for j in range(p):
        nsq = norms_sq[j]
        if nsq == 0.0:
            continue
        g = 0.0
        for r in range(n):
            g += X[r, j] * rho[r]
        z = beta[j] + g / nsq
        u = lam / nsq
        if z > u:
            nb = z - u
        elif z < -u:
            nb = z + u
        else:
            nb = 0.0
        d = nb - beta[j]
        if d != 0.0:
            beta[j] = nb
            for r in range(n):
                rho[r] -= d * X[r, j]


@njit(cache=True)
def cd_ordered_pass_plain(X, beta, rho, lam, norms_sq, order):
    """Same as cd_full_pass_plain but with an explicit coordinate order."""
    n = X.shape[0]
    for i in range(order.size):
        j = order[i]
        nsq = norms_sq[j]
        if nsq == 0.0:
            continue
        g = 0.0
        for r in range(n):
            g += X[r, j] * rho[r]
        z = beta[j] + g / nsq
        u = lam / nsq
        if z > u:
            nb = z - u
        elif z < -u:
            nb = z + u
        else:
            nb = 0.0
        d = nb - beta[j]
        if d != 0.0:
            beta[j] = nb
            for r in range(n):
                rho[r] -= d * X[r, j]
