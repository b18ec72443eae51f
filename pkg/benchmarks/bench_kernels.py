"""Time every hot kernel under numba and under the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 3]

The numba timings exclude compilation (one warm-up call first).
"""
import argparse
import time

import numpy as np

from skewrand import _kernels
from skewrand.graphgen import make_rng


def _best(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def cases():
    rng = make_rng(0)
    n, d = 2000, 3
    stubs = rng.permutation(np.repeat(np.arange(n, dtype=np.int64), d))
    sw_n, sw_d = 1000, 100
    sw_stubs = rng.permutation(np.repeat(np.arange(sw_n, dtype=np.int64), sw_d))
    cdf_vals = np.sort(rng.random(200_000))
    return [
        ("walk_class_counts(7, 8)", "walk_class_counts", lambda f: f(7, 8)),
        (f"pairing_is_simple(n={n}, d={d})", "pairing_is_simple", lambda f: f(stubs, n)),
        (
            f"sw_round(n={sw_n}, d={sw_d})",
            "sw_round",
            lambda f: f(sw_stubs, np.zeros((sw_n, sw_n), dtype=np.bool_)),
        ),
        ("ks_statistic(200k)", "ks_statistic", lambda f: f(cdf_vals)),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"{'kernel':34s} {'numba [s]':>12s} {'numpy [s]':>12s} {'speedup':>9s}")
    for label, name, call in cases():
        jit = getattr(_kernels, f"{name}_jit")
        vec = getattr(_kernels, f"{name}_np")
        call(jit)  # compile
        t_jit = _best(lambda: call(jit), args.repeat)
        t_np = _best(lambda: call(vec), args.repeat)
        print(f"{label:34s} {t_jit:12.4f} {t_np:12.4f} {t_np / t_jit:8.1f}x")


if __name__ == "__main__":
    main()
