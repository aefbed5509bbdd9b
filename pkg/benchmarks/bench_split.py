#!/usr/bin/env python3
"""Benchmark the compiled split-search kernel against the numpy fallback.

Trains the same forest under both backends, checks the models come out
bit-identical, and reports wall time. Defaults mirror the evaluation
workload (fold-sized row counts, many trees), where the compiled scan
pays off most; at very large node sizes the two backends converge since
both sort in compiled code. Run from the repository root:

    python benchmarks/bench_split.py [--rows 4000] [--cols 16] [--trees 40]
"""

import argparse
import json
import os
import time

import numpy as np

from nextday.learn import kernels
from nextday.learn.tree import ForestConfig, train_forest

PURE_ENV = "NEXTDAY_PURE_SPLIT"


def make_data(rows: int, cols: int, seed: int = 7):
    rng = np.random.default_rng(seed)
    x = rng.normal(size=(rows, cols))
    logits = x[:, 0] - 0.5 * x[:, 1] + 0.25 * rng.normal(size=rows)
    return x, (logits > 0).astype(np.int8)


def time_training(x, y, trees: int, repeats: int):
    cfg = ForestConfig(n_trees=trees, seed=3)
    best = float("inf")
    model = None
    for _ in range(repeats):
        started = time.perf_counter()
        model = train_forest(x, y, cfg)
        best = min(best, time.perf_counter() - started)
    return best, model


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--rows", type=int, default=300)
    parser.add_argument("--cols", type=int, default=8)
    parser.add_argument("--trees", type=int, default=200)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    if not kernels.compiled_available():
        print("compiled kernel not built; only the pure backend is available")

    x, y = make_data(args.rows, args.cols)
    print(f"forest: {args.trees} trees on {args.rows} rows x {args.cols} features")

    timings = {}
    models = {}
    backends = ["pure"] + (["compiled"] if kernels.compiled_available() else [])
    for backend in backends:
        if backend == "pure":
            os.environ[PURE_ENV] = "1"
        else:
            os.environ.pop(PURE_ENV, None)
        assert kernels.active_backend() == backend
        timings[backend], models[backend] = time_training(x, y, args.trees, args.repeats)
        print(f"  {backend:>8}: {timings[backend]:8.3f} s")

    if len(models) == 2:
        same = json.dumps(models["pure"].to_dict()) == json.dumps(models["compiled"].to_dict())
        print(f"  models bit-identical across backends: {same}")
        print(f"  speedup: {timings['pure'] / timings['compiled']:.1f}x")
        if not same:
            return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
