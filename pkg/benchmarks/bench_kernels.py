"""Benchmark: compiled vs pure-Python elimination kernel.

Workloads mirror the package's hot paths: rigidity-oracle matrices (tall,
small integer entries that grow during reduction) and batches of the small
systems solved per framed-cycle vertex.

Run:  python benchmarks/bench_kernels.py
"""

import random
import time

from tensec import _kernel_py

try:
    from tensec import _kernel
except ImportError:
    _kernel = None


def random_matrix(rng, rows, cols, bound):
    return [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)]


def bench(kernel, matrices, repeats):
    t0 = time.perf_counter()
    for _ in range(repeats):
        for rows, ncols in matrices:
            kernel.echelon_int(rows, ncols)
    return time.perf_counter() - t0


def workload_oracle(rng):
    # 2n x |E| rigidity shapes with coordinate-difference-sized entries
    return [(random_matrix(rng, 24, 18, 10 ** 6), 18) for _ in range(30)]


def workload_cycles(rng):
    # 3k x 2k equilibrium systems for framed cycles, k = 3..7
    out = []
    for k in (3, 4, 5, 6, 7):
        for _ in range(40):
            out.append((random_matrix(rng, 3 * k, 2 * k, 10 ** 4), 2 * k))
    return out


def main():
    rng = random.Random(12345)
    workloads = [("oracle 24x18", workload_oracle(rng), 8),
                 ("cycle  3kx2k", workload_cycles(rng), 4)]
    print(f"{'workload':<14} {'python':>10} {'cython':>10} {'speedup':>9}")
    for name, matrices, repeats in workloads:
        t_py = bench(_kernel_py, matrices, repeats)
        if _kernel is None:
            print(f"{name:<14} {t_py:>9.3f}s {'n/a':>10} {'n/a':>9}")
            continue
        t_cy = bench(_kernel, matrices, repeats)
        check_py = _kernel_py.echelon_int(matrices[0][0], matrices[0][1])
        check_cy = _kernel.echelon_int(matrices[0][0], matrices[0][1])
        assert check_py == check_cy, "backends disagree"
        print(f"{name:<14} {t_py:>9.3f}s {t_cy:>9.3f}s {t_py / t_cy:>8.2f}x")


if __name__ == "__main__":
    main()
