"""Compare the numba and numpy GF(p) row-reduction kernels.

    python benchmarks/bench_kernels.py [--sizes 100 300 600] [--p 2 3 32003] [--repeat 3]
"""
import argparse
import time

import numpy as np

from hermite_lab._kernels import JIT_ENABLED, rref_mod_p


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[100, 300, 600])
    ap.add_argument("--p", type=int, nargs="+", default=[2, 3, 32003])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    if not JIT_ENABLED:
        print("numba path disabled (HERMITE_LAB_DISABLE_JIT set or numba missing); timing numpy only")
    rng = np.random.default_rng(args.seed)
    # warm the jit cache so compile time is not measured
    rref_mod_p(np.eye(3, dtype=np.int64), 3, use_jit=True)

    print(f"{'p':>6} {'n':>6} {'numpy s':>10} {'numba s':>10} {'speedup':>8}")
    for p in args.p:
        for n in args.sizes:
            a = rng.integers(0, p, size=(n, n + n // 2), dtype=np.int64)
            r_np = rref_mod_p(a, p, use_jit=False)
            r_nb = rref_mod_p(a, p, use_jit=True)
            assert np.array_equal(r_np[0], r_nb[0]) and np.array_equal(r_np[1], r_nb[1])
            t_np = best_of(lambda: rref_mod_p(a, p, use_jit=False), args.repeat)
            t_nb = best_of(lambda: rref_mod_p(a, p, use_jit=True), args.repeat) if JIT_ENABLED else float("nan")
            print(f"{p:>6} {n:>6} {t_np:>10.4f} {t_nb:>10.4f} {t_np / t_nb:>8.1f}")


if __name__ == "__main__":
    main()
