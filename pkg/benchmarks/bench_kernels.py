"""Benchmark the compiled kernels against the numpy fallback.

Times the two hot primitives (characteristic polynomial, simultaneous root
iteration) and the ladder-extraction pipeline built on them.

    python3 benchmarks/bench_kernels.py [--sizes 4 6 8] [--repeats 200]
"""

import argparse
import time

import numpy as np

from gzkit import _kernels_py

try:
    from gzkit import _kernels
except ImportError:
    _kernels = None


def time_call(fn, repeats):
    best = float("inf")
    for _ in range(3):
        t0 = time.perf_counter()
        for _ in range(repeats):
            fn()
        best = min(best, (time.perf_counter() - t0) / repeats)
    return best


def bench_backend(kernels, matrices, repeats):
    rows = {}
    for n, a in matrices.items():
        coeffs = kernels.charpoly(a)
        target = 1e-11 * (1.0 + float(np.max(np.abs(coeffs))))
        rows[n] = {
            "charpoly": time_call(lambda a=a: kernels.charpoly(a), repeats),
            "aberth": time_call(
                lambda c=coeffs, t=target: kernels.aberth(c, t, 200), repeats
            ),
            "extract": time_call(
                lambda a=a, t=target, k=kernels: [
                    k.aberth(k.charpoly(a[:m, :m]), t, 200)
                    for m in range(2, a.shape[0] + 1)
                ],
                max(repeats // 4, 1),
            ),
        }
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", type=int, nargs="+", default=[4, 6, 8])
    parser.add_argument("--repeats", type=int, default=200)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    matrices = {
        n: rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        for n in args.sizes
    }

    results = {"numpy": bench_backend(_kernels_py, matrices, args.repeats)}
    if _kernels is not None:
        results["compiled"] = bench_backend(_kernels, matrices, args.repeats)
    else:
        print("compiled extension not available; timing the fallback only\n")

    kernels = ["charpoly", "aberth", "extract"]
    header = f"{'n':>3} {'kernel':>9}" + "".join(
        f" {name:>12}" for name in results
    )
    if len(results) == 2:
        header += f" {'speedup':>9}"
    print(header)
    for n in args.sizes:
        for kernel in kernels:
            row = f"{n:>3} {kernel:>9}"
            for name in results:
                row += f" {results[name][n][kernel] * 1e6:>10.1f}us"
            if len(results) == 2:
                ratio = results["numpy"][n][kernel] / results["compiled"][n][kernel]
                row += f" {ratio:>8.1f}x"
            print(row)


if __name__ == "__main__":
    main()
