#!/usr/bin/env python3
"""Benchmark the exhaustive binomial scan: compiled kernel vs pure Python.

Runs the same (q, max_t) grid through both backends, checks the results
are identical, and prints per-field timings with the speedup.  The pure
twin is orders of magnitude slower, so the default grid is small; raise
--max-t for a longer run.

Usage:
    python benchmarks/bench_scan.py
    python benchmarks/bench_scan.py --fields 9,16,17,25 --max-t 20
"""

import argparse
import time

from binomcensus.arith import factor
from binomcensus.fields import build_field, kernel_backend, oracle_binomial_scan


def time_backend(ctx, max_t, backend):
    t0 = time.perf_counter()
    masks = [oracle_binomial_scan(ctx, t, backend=backend) for t in range(1, max_t + 1)]
    return time.perf_counter() - t0, masks


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--fields", default="9,16,17,25", help="comma-separated prime powers")
    parser.add_argument("--max-t", type=int, default=32, help="scan degrees 1..max-t")
    args = parser.parse_args()

    qs = [int(x) for x in args.fields.split(",")]
    have_compiled = kernel_backend() == "compiled"
    if not have_compiled:
        print("compiled kernel not built; timing the pure backend only")

    header = f"{'q':>5} {'max_t':>6} {'pure_s':>10}"
    if have_compiled:
        header += f" {'compiled_s':>11} {'speedup':>8}"
    print(header)
    for q in qs:
        p, e = factor(q).factors[0]
        ctx = build_field(p, e)
        pure_s, pure_masks = time_backend(ctx, args.max_t, "pure")
        line = f"{q:>5} {args.max_t:>6} {pure_s:>10.3f}"
        if have_compiled:
            comp_s, comp_masks = time_backend(ctx, args.max_t, "compiled")
            if pure_masks != comp_masks:
                raise AssertionError(f"backend mismatch at q={q}")
            line += f" {comp_s:>11.3f} {pure_s / comp_s:>8.1f}"
        print(line)


if __name__ == "__main__":
    main()
