#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Times the three hot kernels on workloads shaped like the real verification
runs: series products at the working precision, echelon reduction of
condition matrices, and window coefficient extraction.

    python3 benchmarks/bench_kernels.py [--sizes small|full]

The same arrays are fed to both backends and the outputs are compared, so
this doubles as an end-to-end agreement check.
"""

import argparse
import time

import numpy as np

from raycert import _kernels_numpy as KNP
from raycert.ff import make_field

try:
    from raycert import _kernels_numba as KNB
except ImportError:
    KNB = None


def bench(label, fn_nb, fn_np, check=True):
    if KNB is not None:
        fn_nb()  # warm-up / JIT
        t0 = time.perf_counter()
        out_nb = fn_nb()
        t_nb = time.perf_counter() - t0
    else:
        out_nb, t_nb = None, float("nan")
    t0 = time.perf_counter()
    out_np = fn_np()
    t_np = time.perf_counter() - t0
    if check and out_nb is not None:
        a = out_nb[0] if isinstance(out_nb, tuple) else out_nb
        b = out_np[0] if isinstance(out_np, tuple) else out_np
        assert np.array_equal(a, b), f"backend mismatch in {label}"
    speedup = t_np / t_nb if t_nb and t_nb == t_nb else float("nan")
    print(f"{label:<44} numba {t_nb * 1e3:9.2f} ms   numpy {t_np * 1e3:9.2f} ms"
          f"   speedup {speedup:6.1f}x")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", choices=["small", "full"], default="full")
    args = ap.parse_args()
    full = args.sizes == "full"

    rng = np.random.default_rng(0)
    cases = [(2, 1), (2, 2), (3, 2)]
    series_len = 770 if full else 200          # (2,2,5) working precision
    mat_shape = (600, 450) if full else (120, 90)

    print(f"kernel benchmark (series length {series_len}, "
          f"matrix {mat_shape[0]}x{mat_shape[1]})")
    if KNB is None:
        print("numba unavailable: timing the fallback only")
    for p, k in cases:
        fld = make_field(p, k)
        red, order = fld.red, fld.order

        a = rng.integers(0, p, (series_len, k), dtype=np.int64)
        b = rng.integers(0, p, (series_len, k), dtype=np.int64)
        bench(f"conv_mod      GF({p}^{k}) len {series_len}",
              lambda: KNB.conv_mod(a, b, p, red) if KNB else None,
              lambda: KNP.conv_mod(a, b, p, red))

        s = rng.integers(0, p, (series_len, k), dtype=np.int64)
        s[0] = 0
        s[0, 0] = 1
        bench(f"series_inv    GF({p}^{k}) len {series_len}",
              lambda: KNB.series_inv(s, p, red, order) if KNB else None,
              lambda: KNP.series_inv(s, p, red, order))

        mat = rng.integers(0, p, (*mat_shape, k), dtype=np.int64)
        bench(f"rref          GF({p}^{k}) {mat_shape[0]}x{mat_shape[1]}",
              lambda: KNB.rref(mat.copy(), p, red, order) if KNB else None,
              lambda: KNP.rref(mat.copy(), p, red, order),
              check=False)  # rref mutates; compare ranks instead
        if KNB:
            r_nb, _ = KNB.rref(mat.copy(), p, red, order)
            r_np, _ = KNP.rref(mat.copy(), p, red, order)
            assert r_nb == r_np

        A = rng.integers(0, p, (160, 300, k), dtype=np.int64)
        avals = rng.integers(-400, -100, 160).astype(np.int64)
        B = rng.integers(0, p, (600, k), dtype=np.int64)
        bench(f"window_coeffs GF({p}^{k}) 160x300 window 450",
              lambda: KNB.window_coeffs(A, avals, B, 20, -380, 450, p, red) if KNB else None,
              lambda: KNP.window_coeffs(A, avals, B, 20, -380, 450, p, red))


if __name__ == "__main__":
    main()
