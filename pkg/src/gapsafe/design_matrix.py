"""Design matrix storage: dense column-major or compressed sparse column.

The only data-layout-aware piece of the package.  Everything else goes
through ``col_dot`` / ``axpy_col`` / ``transpose_dot`` /
``max_abs_correlation`` so the screening rules and the solver never see
the storage format.

A matrix may carry an implicit diagonal tail of weight ``tail_weight``:
column j then has one extra row at index ``n_base + j`` with value
``sqrt(tail_weight)``.  This implements the Elastic-Net augmentation
without materializing p extra rows.
"""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from . import _kernels


class DesignMatrix:
    """n x p feature matrix with cached per-column Euclidean norms.

    Parameters
    ----------
    storage : array-like of shape (n_base, p) or scipy sparse matrix
        Dense input is converted to a Fortran-ordered float64 array,
        sparse input to canonical CSC (sorted indices, no duplicates).
    tail_weight : float, optional
        Weight of the implicit diagonal tail (0 means no tail).
    """

    def __init__(self, storage, tail_weight: float = 0.0):
        if tail_weight < 0:
            raise ValueError("tail_weight must be non-negative")
        if sp.issparse(storage):
            mat = sp.csc_matrix(storage).astype(np.float64)
            mat.sum_duplicates()
            mat.sort_indices()
            self._mat = mat
            self.is_sparse = True
            base_sq = np.asarray(mat.multiply(mat).sum(axis=0)).ravel()
        else:
            arr = np.asfortranarray(np.asarray(storage, dtype=np.float64))
            if arr.ndim != 2:
                raise ValueError("storage must be 2-dimensional")
            self._mat = arr
            self.is_sparse = False
            base_sq = np.einsum("ij,ij->j", arr, arr)
        self.n_base, self.n_cols = self._mat.shape
        if self.n_base < 1 or self.n_cols < 1:
            raise ValueError("matrix must have at least one row and column")
        self.tail_weight = float(tail_weight)
        self.tail_scale = float(np.sqrt(tail_weight))
        self._col_norms_sq = base_sq + self.tail_weight
        self._col_norms = np.sqrt(self._col_norms_sq)

    # ------------------------------------------------------------------
    @property
    def n_rows(self) -> int:
        """Logical number of rows (includes the implicit tail)."""
        if self.tail_weight > 0:
            return self.n_base + self.n_cols
        return self.n_base

    @property
    def col_norms(self) -> np.ndarray:
        return self._col_norms

    @property
    def col_norms_sq(self) -> np.ndarray:
        return self._col_norms_sq

    @property
    def zero_norm_cols(self) -> np.ndarray:
        """Indices of all-zero columns (always screenable)."""
        return np.flatnonzero(self._col_norms == 0.0)

    def with_tail(self, tail_weight: float) -> "DesignMatrix":
        """Same stored data with a different implicit tail weight."""
        return DesignMatrix(self._mat, tail_weight=tail_weight)

    def normalized(self) -> "DesignMatrix":
        """Copy with unit-norm columns (zero columns left untouched)."""
        if self.tail_weight > 0:
            raise ValueError("cannot normalize an augmented matrix")
        norms = self._col_norms.copy()
        norms[norms == 0.0] = 1.0
        if self.is_sparse:
            scaled = self._mat @ sp.diags(1.0 / norms)
            return DesignMatrix(scaled)
        return DesignMatrix(self._mat / norms)

    # ------------------------------------------------------------------
    def _check_col(self, j: int) -> None:
        if not 0 <= j < self.n_cols:
            raise IndexError(f"column index {j} out of range [0, {self.n_cols})")

    def col_dot(self, j: int, v: np.ndarray) -> float:
        """Dot product of column j with a vector of length n_rows."""
        self._check_col(j)
        v = np.asarray(v, dtype=np.float64)
        if v.shape != (self.n_rows,):
            raise ValueError("vector length does not match n_rows")
        if self.is_sparse:
            lo, hi = self._mat.indptr[j], self._mat.indptr[j + 1]
            s = float(np.dot(self._mat.data[lo:hi], v[self._mat.indices[lo:hi]]))
        else:
            s = float(np.dot(self._mat[:, j], v[: self.n_base]))
        if self.tail_scale > 0.0:
            s += self.tail_scale * v[self.n_base + j]
        return s

    def axpy_col(self, j: int, a: float, v: np.ndarray) -> None:
        """In-place update v += a * column_j, touching stored entries only."""
        self._check_col(j)
        if v.shape != (self.n_rows,):
            raise ValueError("vector length does not match n_rows")
        if a == 0.0:
            return
        if self.is_sparse:
            lo, hi = self._mat.indptr[j], self._mat.indptr[j + 1]
            v[self._mat.indices[lo:hi]] += a * self._mat.data[lo:hi]
        else:
            v[: self.n_base] += a * self._mat[:, j]
        if self.tail_scale > 0.0:
            v[self.n_base + j] += a * self.tail_scale

    def matvec(self, beta: np.ndarray) -> np.ndarray:
        """X @ beta, of length n_rows."""
        beta = np.asarray(beta, dtype=np.float64)
        base = self._mat @ beta
        base = np.asarray(base).ravel()
        if self.tail_scale > 0.0:
            return np.concatenate([base, self.tail_scale * beta])
        return base

    def transpose_dot(self, v: np.ndarray, cols: np.ndarray | None = None) -> np.ndarray:
        """X^T v, optionally restricted to a column subset."""
        v = np.ascontiguousarray(v, dtype=np.float64)
        if v.shape != (self.n_rows,):
            raise ValueError("vector length does not match n_rows")
        if cols is None:
            base = self._mat.T @ v[: self.n_base]
            out = np.asarray(base).ravel().astype(np.float64, copy=False)
            if self.tail_scale > 0.0:
                out = out + self.tail_scale * v[self.n_base:]
            return out
        cols = np.asarray(cols, dtype=np.int64)
        out = np.empty(cols.size, dtype=np.float64)
        if self.is_sparse:
            _kernels.tdot_csc(self._mat.data, self._mat.indices,
                              self._mat.indptr, self.n_base, v, cols,
                              self.tail_scale, out)
        else:
            _kernels.tdot_dense(self._mat, v, cols, self.tail_scale, out)
        return out

    def max_abs_correlation(self, v: np.ndarray,
                            restrict: np.ndarray | None = None) -> tuple[float, int]:
        """(max_j |x_j^T v|, argmax j), ties broken by smallest index.

        When ``restrict`` is a safe active set and v the current
        residual, the restricted result equals the unrestricted one.
        """
        if restrict is not None:
            restrict = np.asarray(restrict, dtype=np.int64)
            if restrict.size == 0:
                raise ValueError("empty restriction set")
        dots = np.abs(self.transpose_dot(v, cols=restrict))
        i = int(np.argmax(dots))
        j = i if restrict is None else int(restrict[i])
        return float(dots[i]), j

    # ------------------------------------------------------------------
    def toarray(self) -> np.ndarray:
        """Densified matrix of shape (n_rows, p), tail included."""
        base = self._mat.toarray() if self.is_sparse else np.array(self._mat)
        if self.tail_scale > 0.0:
            tail = self.tail_scale * np.eye(self.n_cols)
            return np.asfortranarray(np.vstack([base, tail]))
        return np.asfortranarray(base)

    def raw(self):
        """Storage handle for the solver kernels."""
        return self._mat
