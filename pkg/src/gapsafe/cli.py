"""Command line entry points: benchmark runner and synthetic data writer."""

from __future__ import annotations

import argparse
import sys

from .bench import RunConfig, run_benchmark
from .datasets import load_dataset, save_dataset, synth_dataset
from .solver import Rule


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gapsafe",
        description="Safe screening benchmarks for Lasso / Elastic-Net paths")
    sub = parser.add_subparsers(dest="command", required=True)

    bench = sub.add_parser("bench", help="run a screening benchmark")
    bench.add_argument("--data", required=True, help="dataset file path")
    bench.add_argument("--format", default="dense-csv",
                       choices=["dense-csv", "svmlight"])
    bench.add_argument("--rules", default="none,gap_sphere",
                       help="comma-separated list of "
                            f"{[r.value for r in Rule]}")
    bench.add_argument("--grid-T", type=int, default=100, dest="grid_T")
    bench.add_argument("--grid-delta", type=float, default=3.0,
                       dest="grid_delta")
    bench.add_argument("--eps", default="1e-4",
                       help="comma-separated duality-gap targets")
    bench.add_argument("--screen-every", type=int, default=10)
    bench.add_argument("--max-passes", type=int, default=100_000)
    bench.add_argument("--l1-ratio", type=float, default=1.0)
    bench.add_argument("--normalize", action="store_true")
    bench.add_argument("--out", default="bench_out")
    bench.add_argument("--seed", type=int, default=None)

    synth = sub.add_parser("synth", help="write a synthetic dataset")
    synth.add_argument("--n", type=int, required=True)
    synth.add_argument("--p", type=int, required=True)
    synth.add_argument("--density", type=float, default=1.0)
    synth.add_argument("--snr", type=float, default=5.0)
    synth.add_argument("--seed", type=int, default=0)
    synth.add_argument("--format", default="dense-csv",
                       choices=["dense-csv", "svmlight"])
    synth.add_argument("--out", required=True)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "synth":
        X, y = synth_dataset(args.n, args.p, density=args.density,
                             snr=args.snr, seed=args.seed)
        save_dataset(args.out, args.format, X, y)
        print(f"wrote {args.n}x{args.p} dataset to {args.out}")
        return 0

    X, y = load_dataset(args.data, args.format)
    config = RunConfig(
        rules=[r.strip() for r in args.rules.split(",") if r.strip()],
        epsilons=[float(e) for e in args.eps.split(",") if e.strip()],
        grid_T=args.grid_T,
        grid_delta=args.grid_delta,
        screen_every=args.screen_every,
        max_passes=args.max_passes,
        l1_ratio=args.l1_ratio,
        normalize=args.normalize,
        out_dir=args.out,
        seed=args.seed,
        dataset=args.data,
        dataset_format=args.format,
    )
    report = run_benchmark(config, X, y)
    for run in report["summary"]["runs"]:
        print(f"rule={run['rule']:<11} eps={run['epsilon']:.1e} "
              f"time={run['total_seconds']:.3f}s "
              f"converged={run['n_converged']}/{run['n_lambdas']}")
    print(f"reports written to {config.out_dir}/")
    return 0


if __name__ == "__main__":
    sys.exit(main())
