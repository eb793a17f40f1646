"""Throughput comparison of the compiled and pure kernel backends.

Run: python3 benchmarks/bench_kernels.py [--n 100000] [--w 200]
"""
import argparse
import time

import numpy as np

from ofdm_scss._kernels import BACKEND, pure

if BACKEND == "fast":
    from ofdm_scss._kernels import _fast as fast
else:
    fast = None

K = 64


def bench(label, fn, *args, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    print(f"{label:35s} {best * 1e3:9.2f} ms")
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=100_000)
    ap.add_argument("--w", type=int, default=200)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    gre = rng.standard_normal((args.n, K // 2 - 1))
    gim = np.zeros_like(gre)
    offsets = rng.integers(0, K, size=args.n)
    x = rng.standard_normal((args.n, args.w))

    print(f"n={args.n} W={args.w} (selected backend: {BACKEND})")
    t_pure = bench("synth_windows pure", pure.synth_windows, gre, gim, K, offsets, args.w)
    if fast is not None:
        t_fast = bench("synth_windows fast", fast.synth_windows, gre, gim, K, offsets, args.w)
        print(f"{'synth speedup':35s} {t_pure / t_fast:9.2f} x")

    t_pure = bench("batch_moments pure", pure.batch_moments, x)
    if fast is not None:
        t_fast = bench("batch_moments fast", fast.batch_moments, x)
        print(f"{'moments speedup':35s} {t_pure / t_fast:9.2f} x")

    if fast is None:
        print("compiled backend unavailable; only the pure path was timed")


if __name__ == "__main__":
    main()
