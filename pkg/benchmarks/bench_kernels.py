"""Timing comparison between the compiled and pure-Python kernel backends.

Run from the repository root:

    python3 benchmarks/bench_kernels.py [--repeats N]

Times the Jacobi eigensolver, the batched cell optimizer over a full
bipartition enumeration, and an end-to-end gap computation. Problems are
seeded, so both backends solve identical instances.
"""

import argparse
import time

import numpy as np

from negtype import _kernels_py, kernels


def _symmetric(rng, n):
    A = rng.standard_normal((n, n))
    return 0.5 * (A + A.T)


def _cells_problem(rng, n):
    M = np.abs(_symmetric(rng, n)) + 1.0
    np.fill_diagonal(M, 0.0)
    masks = np.arange(1, 2 ** (n - 1), dtype=np.uint64)
    rows = np.zeros((masks.size, n), dtype=np.int64)
    rows[:, 0] = 1
    for i in range(1, n):
        rows[:, i] = 1 - ((masks >> np.uint64(i - 1)) & np.uint64(1)).astype(np.int64)
    step = 1.0 / np.linalg.norm(M, 2)
    return M, rows, step


def _best_of(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeats", type=int, default=5, help="timing repeats, best-of")
    args = ap.parse_args()

    if kernels.BACKEND == "pure":
        print("compiled backend unavailable; timing the pure backend against itself")
    backends = [("compiled", kernels), ("pure", _kernels_py)]

    cases = []
    rng = np.random.default_rng(0)
    for n in (8, 16, 32, 64):
        A = _symmetric(rng, n)
        cases.append((f"jacobi_eigh n={n}", lambda mod, A=A: mod.jacobi_eigh(A)))
    for n in (8, 10, 12):
        M, rows, step = _cells_problem(rng, n)
        cases.append(
            (
                f"minimize_cells n={n} ({rows.shape[0]} cells)",
                lambda mod, M=M, rows=rows, step=step: mod.minimize_cells(
                    M, rows, step, 1e-10, 100_000
                ),
            )
        )

    w = max(len(name) for name, _ in cases)
    print(f"{'case':<{w}}  {'compiled':>10}  {'pure':>10}  {'speedup':>8}")
    for name, make in cases:
        fast = _best_of(lambda: make(backends[0][1]), args.repeats)
        slow = _best_of(lambda: make(backends[1][1]), args.repeats)
        print(f"{name:<{w}}  {fast * 1e3:>8.2f}ms  {slow * 1e3:>8.2f}ms  {slow / fast:>7.1f}x")


if __name__ == "__main__":
    main()
