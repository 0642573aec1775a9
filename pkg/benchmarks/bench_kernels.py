"""Compare the compiled and numpy enumeration kernels on tree balls.

Run with ``python3 benchmarks/bench_kernels.py [--repeat N]``.
"""
import argparse
import timeit

import numpy as np

from sostree import kernels
from sostree.model import build_ball

CASES = [(2, 1, 3), (2, 2, 3), (3, 1, 3), (3, 2, 2), (4, 1, 3)]


def inputs(k, n, q, seed=0):
    rng = np.random.default_rng(seed)
    b = build_ball(k, n)
    vf = rng.uniform(0.1, 3.0, size=(b.size, q))
    s = np.arange(q)
    ew = 0.4 ** np.abs(s[:, None] - s[None, :]).astype(float)
    return b.parent, vf, ew


def best_of(fn, args, repeat):
    number = 1
    while timeit.timeit(lambda: fn(*args), number=number) < 0.05:
        number *= 2
    return min(timeit.repeat(lambda: fn(*args), number=number, repeat=repeat)) / number


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if kernels.compiled_ball_weights is None:
        print("compiled kernel not built; only the numpy backend is timed")
    print(f"{'k':>2} {'n':>2} {'q':>2} {'terms':>8} {'numpy ms':>10} {'cython ms':>10} {'speedup':>8}")
    for k, n, q in CASES:
        a = inputs(k, n, q)
        terms = q ** len(a[0])
        tp = best_of(kernels.python_ball_weights, a, args.repeat)
        if kernels.compiled_ball_weights is not None:
            tc = best_of(kernels.compiled_ball_weights, a, args.repeat)
            assert np.allclose(kernels.python_ball_weights(*a), kernels.compiled_ball_weights(*a), rtol=1e-13)
            print(f"{k:>2} {n:>2} {q:>2} {terms:>8} {tp * 1e3:>10.3f} {tc * 1e3:>10.3f} {tp / tc:>7.1f}x")
        else:
            print(f"{k:>2} {n:>2} {q:>2} {terms:>8} {tp * 1e3:>10.3f} {'-':>10} {'-':>8}")


if __name__ == "__main__":
    main()
