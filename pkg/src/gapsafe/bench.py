"""Benchmark harness: run screening rules over a lambda grid and emit reports.

Outputs, all UTF-8 with LF endings:
  trace.csv      one row per (rule, eps, lambda index, checkpoint)
  summary.json   total path wall-clock per (rule, epsilon)
  metadata.json  seed, versions, config echo
"""

from __future__ import annotations

import csv
import json
import platform
import time
from dataclasses import dataclass, field, asdict
from pathlib import Path

import numpy as np

from .design_matrix import DesignMatrix
from .path import run_path
from .problem import lambda_grid
from .solver import Rule, SolverConfig

TRACE_COLUMNS = ["rule", "t", "lambda", "checkpoint_pass", "n_active", "p",
                 "gap", "radius", "elapsed_ms"]

SUMMARY_SCHEMA = {
    "type": "object",
    "properties": {
        "runs": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "rule": {"type": "string"},
                    "epsilon": {"type": "number"},
                    "total_seconds": {"type": "number"},
                    "n_converged": {"type": "integer"},
                    "n_lambdas": {"type": "integer"},
                },
                "required": ["rule", "epsilon", "total_seconds",
                             "n_converged", "n_lambdas"],
            },
        },
    },
    "required": ["runs"],
}

METADATA_SCHEMA = {
    "type": "object",
    "properties": {
        "seed": {"type": ["integer", "null"]},
        "versions": {"type": "object"},
        "config": {"type": "object"},
        "parallel_note": {"type": "string"},
    },
    "required": ["seed", "versions", "config"],
}


@dataclass
class RunConfig:
    rules: list
    epsilons: list
    grid_T: int = 100
    grid_delta: float = 3.0
    screen_every: int = 10
    max_passes: int = 100_000
    l1_ratio: float = 1.0
    normalize: bool = False
    out_dir: str = "bench_out"
    seed: int | None = None
    dataset: str | None = None
    dataset_format: str | None = None

    def __post_init__(self):
        if not self.rules:
            raise ValueError("at least one rule is required")
        self.rules = [Rule(r) for r in self.rules]
        if not self.epsilons or any(e <= 0 for e in self.epsilons):
            raise ValueError("epsilons must be non-empty and positive")


def run_benchmark(config: RunConfig, X: DesignMatrix,
                  y: np.ndarray) -> dict:
    """Run every (rule, epsilon) path on (X, y) and write the reports."""
    if config.normalize:
        X = X.normalized()
    lam_max, _ = X.max_abs_correlation(np.asarray(y, dtype=np.float64))
    grid = lambda_grid(lam_max, config.grid_T, config.grid_delta)

    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    trace_rows = []
    summary_runs = []

    for rule in config.rules:
        for eps in config.epsilons:
            solver_cfg = SolverConfig(epsilon=float(eps),
                                      max_passes=config.max_passes,
                                      screen_every=config.screen_every,
                                      rule=rule)
            t0 = time.perf_counter()
            if config.l1_ratio == 1.0:
                result = run_path(X, y, grid, solver_cfg)
            else:
                result = _run_enet_path(X, y, grid, solver_cfg,
                                        config.l1_ratio)
            total = time.perf_counter() - t0
            for t, lam in enumerate(result.lambdas):
                elapsed_ms = result.timings[t] * 1e3
                for (cp_pass, n_active, gap, radius) in result.traces[t]:
                    trace_rows.append({
                        "rule": rule.value, "t": t, "lambda": lam,
                        "checkpoint_pass": cp_pass, "n_active": n_active,
                        "p": X.n_cols, "gap": gap, "radius": radius,
                        "elapsed_ms": elapsed_ms,
                    })
            summary_runs.append({
                "rule": rule.value, "epsilon": float(eps),
                "total_seconds": total,
                "n_converged": int(result.converged.sum()),
                "n_lambdas": int(result.lambdas.size),
            })

    with open(out / "trace.csv", "w", encoding="utf-8", newline="\n") as fh:
        writer = csv.DictWriter(fh, fieldnames=TRACE_COLUMNS,
                                lineterminator="\n")
        writer.writeheader()
        writer.writerows(trace_rows)
    summary = {"runs": summary_runs}
    with open(out / "summary.json", "w", encoding="utf-8", newline="\n") as fh:
        json.dump(summary, fh, indent=2)
        fh.write("\n")
    metadata = {
        "seed": config.seed,
        "versions": {
            "python": platform.python_version(),
            "numpy": np.__version__,
        },
        "config": {k: (v if not isinstance(v, list) else
                       [getattr(x, "value", x) for x in v])
                   for k, v in asdict(config).items()},
    }
    with open(out / "metadata.json", "w", encoding="utf-8", newline="\n") as fh:
        json.dump(metadata, fh, indent=2)
        fh.write("\n")
    return {"trace_rows": trace_rows, "summary": summary,
            "metadata": metadata}


def _run_enet_path(X, y, grid, solver_cfg, l1_ratio):
    """Per-lambda Elastic-Net reduction (tail weight depends on lambda)."""
    from .elastic_net import ElasticNetProblem, to_lasso
    from .path import PathResult
    from .solver import solve

    if l1_ratio == 1.0:
        # pure l1: identical to the plain Lasso path, bit for bit
        return run_path(X, y, grid, solver_cfg)

    p = X.n_cols
    betas = np.zeros((grid.size, p))
    certs, traces, timings, states = [], [], [], []
    conv = np.zeros(grid.size, dtype=bool)
    warm = None
    for t, lam in enumerate(grid):
        t0 = time.perf_counter()
        en = ElasticNetProblem(X, y, lam=float(lam) / l1_ratio,
                               alpha_mix=l1_ratio)
        prob = to_lasso(en)
        beta, cert, state = solve(prob, solver_cfg, warm_beta=warm)
        timings.append(time.perf_counter() - t0)
        betas[t] = beta
        certs.append(cert)
        traces.append(state.screen_trace)
        states.append(state)
        conv[t] = state.converged
        warm = beta
    return PathResult(lambdas=grid, betas=betas, certs=certs, traces=traces,
                      timings=timings, converged=conv, states=states)
