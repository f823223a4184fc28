#!/usr/bin/env python3
"""Benchmark the photon-number series: numba kernel vs numpy fallback.

Workloads mimic the near-critical sweep regime where the series cutoff grows
with the mean photon number.  Both backends are checked for agreement before
timing, so a speedup never hides a numerical divergence.

Usage:
    python3 benchmarks/benchmark_photon_kernel.py
    python3 benchmarks/benchmark_photon_kernel.py --cutoffs 100 500 2000 --repeats 5
    python3 benchmarks/benchmark_photon_kernel.py --output results.json
"""
from __future__ import annotations

import argparse
import json
import math
import time

import numpy as np

from dicke_metrology import _kernels
from dicke_metrology.dicke import DickeParams, reduced_radiation_state
from dicke_metrology.measurements import photon_kernel_params


def kernel_inputs(lam: float) -> tuple[float, float, float, float]:
    k = photon_kernel_params(reduced_radiation_state(DickeParams(lam=lam)))
    return k.r00, k.a_tilde - k.b_tilde, k.a_tilde + k.b_tilde, abs(k.c_tilde)


def time_fn(fn, args, repeats: int) -> float:
    best = math.inf
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--cutoffs", type=int, nargs="+", default=[100, 500, 2000])
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--lambdas", type=float, nargs="+", default=[0.3, 0.49, 0.51, 0.8])
    parser.add_argument("--output", help="write results as JSON")
    args = parser.parse_args()

    if not _kernels.NUMBA_AVAILABLE:
        print("numba not installed; nothing to compare")
        return 0

    print("warming up jit...")
    _kernels.warmup()

    results = []
    header = f"{'lambda':>7} {'n_max':>6} {'numba (s)':>12} {'numpy (s)':>12} {'speedup':>8} {'max|dp|':>10}"
    print(header)
    print("-" * len(header))
    for lam in args.lambdas:
        r00, t, s, c = kernel_inputs(lam)
        for n_max in args.cutoffs:
            pj = _kernels.pn_series_numba(r00, t, s, c, n_max)
            pn = _kernels.pn_series_numpy(r00, t, s, c, n_max)
            diff = float(np.max(np.abs(pj - pn)))
            if diff > 1e-12:
                raise AssertionError(f"backends disagree by {diff:.3e} at lam={lam}, n_max={n_max}")
            tj = time_fn(_kernels.pn_series_numba, (r00, t, s, c, n_max), args.repeats)
            tn = time_fn(_kernels.pn_series_numpy, (r00, t, s, c, n_max), args.repeats)
            print(f"{lam:>7.3f} {n_max:>6d} {tj:>12.6f} {tn:>12.6f} {tn / tj:>8.1f} {diff:>10.2e}")
            results.append(
                {"lambda": lam, "n_max": n_max, "numba_s": tj, "numpy_s": tn, "max_abs_diff": diff}
            )

    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            json.dump({"results": results}, fh, indent=2)
        print(f"wrote {args.output}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
