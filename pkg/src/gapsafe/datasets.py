"""Dataset ingestion (dense CSV, svmlight) and synthetic generation."""

from __future__ import annotations

import csv
import io

import numpy as np
import scipy.sparse as sp

from .design_matrix import DesignMatrix


class DatasetFormatError(ValueError):
    """Malformed dataset file; message carries the line number."""


def _parse_svmlight(lines) -> tuple[DesignMatrix, np.ndarray]:
    targets = []
    rows, cols, vals = [], [], []
    n_cols = 0
    row = 0
    for lineno, line in enumerate(lines, start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            targets.append(float(parts[0]))
        except ValueError as exc:
            raise DatasetFormatError(
                f"line {lineno}: bad target {parts[0]!r}") from exc
        seen = set()
        for tok in parts[1:]:
            try:
                idx_s, val_s = tok.split(":", 1)
                idx = int(idx_s)
                val = float(val_s)
            except ValueError as exc:
                raise DatasetFormatError(
                    f"line {lineno}: bad feature token {tok!r}") from exc
            if idx < 1:
                raise DatasetFormatError(
                    f"line {lineno}: feature indices are 1-based, got {idx}")
            if idx in seen:
                raise DatasetFormatError(
                    f"line {lineno}: duplicate feature index {idx}")
            seen.add(idx)
            rows.append(row)
            cols.append(idx - 1)
            vals.append(val)
            n_cols = max(n_cols, idx)
        row += 1
    if row == 0:
        raise DatasetFormatError("no data rows found")
    mat = sp.csc_matrix((vals, (rows, cols)), shape=(row, max(n_cols, 1)))
    return DesignMatrix(mat), np.array(targets)


def _parse_dense_csv(lines) -> tuple[DesignMatrix, np.ndarray]:
    reader = csv.reader(lines)
    try:
        header = next(reader)
    except StopIteration:
        raise DatasetFormatError("empty file") from None
    width = len(header)
    if width < 2:
        raise DatasetFormatError("need a target column and at least one feature")
    y, X = [], []
    for lineno, rec in enumerate(reader, start=2):
        if not rec:
            continue
        if len(rec) != width:
            raise DatasetFormatError(
                f"line {lineno}: expected {width} fields, got {len(rec)}")
        try:
            y.append(float(rec[0]))
            X.append([float(v) for v in rec[1:]])
        except ValueError as exc:
            raise DatasetFormatError(f"line {lineno}: bad number") from exc
    if not y:
        raise DatasetFormatError("no data rows found")
    return DesignMatrix(np.array(X)), np.array(y)


def load_dataset(path, fmt: str) -> tuple[DesignMatrix, np.ndarray]:
    """Read (X, y) from ``path``; fmt is 'dense-csv' or 'svmlight'."""
    with open(path, "r", encoding="utf-8") as fh:
        if fmt == "svmlight":
            return _parse_svmlight(fh)
        if fmt == "dense-csv":
            return _parse_dense_csv(fh)
    raise ValueError(f"unknown format {fmt!r}")


def save_dataset(path, fmt: str, X: DesignMatrix, y: np.ndarray) -> None:
    """Write (X, y) so that load_dataset reproduces it bit-exactly."""
    y = np.asarray(y)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        if fmt == "svmlight":
            dense = X.toarray()
            for i in range(X.n_rows):
                toks = [repr(float(y[i]))]
                nz = np.flatnonzero(dense[i])
                toks.extend(f"{j + 1}:{float(dense[i, j])!r}" for j in nz)
                fh.write(" ".join(toks) + "\n")
        elif fmt == "dense-csv":
            dense = X.toarray()
            fh.write(",".join(["y"] + [f"f{j + 1}" for j in range(X.n_cols)])
                     + "\n")
            for i in range(X.n_rows):
                fh.write(",".join([repr(float(y[i]))]
                                  + [repr(float(v)) for v in dense[i]]) + "\n")
        else:
            raise ValueError(f"unknown format {fmt!r}")


def synth_dataset(n: int, p: int, density: float = 1.0,
                  snr: float = 5.0, seed: int = 0,
                  support_frac: float = 0.05) -> tuple[DesignMatrix, np.ndarray]:
    """Reproducible synthetic regression instance with a planted sparse beta.

    Dense Gaussian design when density == 1, Bernoulli-Gaussian CSC
    otherwise.  Columns are NOT normalized.  ``snr = inf`` means no
    noise.
    """
    if n < 1 or p < 1:
        raise ValueError("n and p must be positive")
    if not 0 < density <= 1:
        raise ValueError("density must lie in (0, 1]")
    rng = np.random.default_rng(seed)
    if density == 1.0:
        X = DesignMatrix(rng.standard_normal((n, p)))
    else:
        mask = rng.random((n, p)) < density
        vals = rng.standard_normal((n, p)) * mask
        X = DesignMatrix(sp.csc_matrix(vals))
    k = max(1, int(round(support_frac * p)))
    support = rng.choice(p, size=k, replace=False)
    beta_true = np.zeros(p)
    beta_true[support] = rng.standard_normal(k) + np.sign(
        rng.standard_normal(k) + 0.5)
    signal = X.matvec(beta_true)
    if np.isinf(snr):
        y = signal
    else:
        noise = rng.standard_normal(n)
        s = float(np.linalg.norm(signal))
        nn = float(np.linalg.norm(noise))
        if s > 0 and nn > 0:
            noise *= s / (snr * nn)
        y = signal + noise
    # guard against an identically-zero target
    if not np.any(y):
        y = rng.standard_normal(n)
    return X, y
