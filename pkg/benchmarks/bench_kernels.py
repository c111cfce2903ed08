"""Time the brute-force enumeration kernel on both backends.

    python3 benchmarks/bench_kernels.py [--words 8] [--senses 5] [--repeat 3]
"""

from __future__ import annotations

import argparse
import random
import time

from dbees import kernels


def make_problem(words: int, senses: int, seed: int):
    rng = random.Random(seed)
    counts = [senses] * words
    offsets = [i * senses for i in range(words)]
    stride = words * senses
    matrix = [0.0] * (stride * stride)
    for r in range(stride):
        for c in range(r + 1, stride):
            matrix[r * stride + c] = matrix[c * stride + r] = rng.random()
    return counts, offsets, matrix, stride


def best_time(backend: str, problem, repeat: int):
    times, result = [], None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = kernels.enumerate_best(*problem, backend=backend)
        times.append(time.perf_counter() - t0)
    return min(times), result


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--words", type=int, default=8)
    ap.add_argument("--senses", type=int, default=5)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    problem = make_problem(args.words, args.senses, args.seed)
    size = args.senses**args.words
    print(f"{args.words} words x {args.senses} senses = {size:,} assignments, default backend {kernels.BACKEND}")
    results = {}
    for backend in ("python", "cython"):
        if backend == "cython" and kernels._ckernels is None:
            print("cython   not built, skipped")
            continue
        secs, results[backend] = best_time(backend, problem, args.repeat)
        print(f"{backend:<8} {secs:8.3f}s  {size / secs:14,.0f} assignments/s")
    if len(results) == 2:
        same = results["python"] == results["cython"]
        print(f"results identical: {same}")


if __name__ == "__main__":
    main()
