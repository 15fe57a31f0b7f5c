#!/usr/bin/env python3
"""Compare the jitted and interpreted solver kernels on a fixed corpus.

Usage:
    python benchmarks/bench_solver.py [--seeds N] [--repeat R]

The corpus is deterministic (seeds 0..N-1 at 6x6), results are checked for
exact agreement between backends, and per-backend wall times are reported.
Compilation happens before timing starts.
"""

from __future__ import annotations

import argparse
import time

from partiti import (
    GeneratorConfig,
    SolverConfig,
    derive_clues,
    random_assignment,
    solve,
)
from partiti._kernels import resolve_backend


def build_corpus(seeds: int):
    corpus = []
    for seed in range(seeds):
        config = GeneratorConfig(seed=seed)
        attempt = 0
        while True:
            assignment = random_assignment(config, attempt)
            if assignment is not None:
                corpus.append(derive_clues(assignment))
                break
            attempt += 1
    return corpus


def run(corpus, backend: str, repeat: int):
    config = SolverConfig(solution_cap=2)
    results = []
    best = float("inf")
    for _ in range(repeat):
        started = time.perf_counter()
        results = [solve(clues, config, backend=backend) for clues in corpus]
        best = min(best, time.perf_counter() - started)
    return best, results


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seeds", type=int, default=50)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    corpus = build_corpus(args.seeds)
    print(f"corpus: {len(corpus)} uniqueness checks at 6x6")
    print(f"default backend resolves to: {resolve_backend()}")

    # warm the jit before timing
    solve(corpus[0], SolverConfig(solution_cap=2), backend="numba")

    times = {}
    outputs = {}
    for backend in ("numba", "numpy"):
        times[backend], outputs[backend] = run(corpus, backend, args.repeat)
        per = times[backend] / len(corpus) * 1e3
        print(f"{backend:>6}: {times[backend]:8.3f} s total   {per:8.3f} ms/solve")

    if outputs["numba"] != outputs["numpy"]:
        print("ERROR: backends disagree")
        return 1
    speedup = times["numpy"] / times["numba"]
    print("agreement: exact (solutions, counts, statistics)")
    print(f"speedup: {speedup:.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
