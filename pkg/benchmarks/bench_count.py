#!/usr/bin/env python3
"""Benchmark the enumeration engines against each other.

Runs the brute-force counter on a spread of instances with the compiled
kernel (when built) and the NumPy fallback, checks they agree, and reports
wall time and speedup.

Usage:
    python benchmarks/bench_count.py [--repeat 3] [--heavy]
"""

from __future__ import annotations

import argparse
import time

from clustercount import (CoeffMap, VarietyInstance, brute_count, dynkin,
                          field_from_order, normal_form_instance)
from clustercount.counting import EXTENSION_AVAILABLE


def cases(heavy: bool):
    yield "A6  q=5", normal_form_instance(field_from_order(5), "A", 6)
    yield "A8  q=3", normal_form_instance(field_from_order(3), "A", 8)
    yield "A8  q=5", normal_form_instance(field_from_order(5), "A", 8)
    yield "D6  q=5", normal_form_instance(field_from_order(5), "D", 6, (2, 3))
    yield "E8  q=3", normal_form_instance(field_from_order(3), "E", 8)
    f9 = field_from_order(9)
    d4 = dynkin("D", 4)
    yield "D4  q=9", VarietyInstance(d4, CoeffMap.ones(f9, d4), f9)
    if heavy:
        yield "A8  q=7", normal_form_instance(field_from_order(7), "A", 8)
        yield "E8  q=5", normal_form_instance(field_from_order(5), "E", 8)


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--heavy", action="store_true",
                        help="include the largest instances")
    args = parser.parse_args()

    engines = ["numpy"]
    if EXTENSION_AVAILABLE:
        engines.insert(0, "ext")
    else:
        print("compiled kernel not available; benchmarking the fallback only")

    header = f"{'instance':10s} {'assignments':>12s}"
    for e in engines:
        header += f" {e + ' [s]':>12s}"
    if len(engines) == 2:
        header += f" {'speedup':>9s} {'count':>12s}"
    else:
        header += f" {'count':>12s}"
    print(header)
    print("-" * len(header))

    for label, inst in cases(args.heavy):
        space = inst.field.q ** inst.n
        row = f"{label:10s} {space:>12d}"
        counts, times = {}, {}
        for e in engines:
            times[e] = best_of(lambda: brute_count(inst, engine=e),
                               args.repeat)
            counts[e] = brute_count(inst, engine=e).count
            row += f" {times[e]:>12.4f}"
        if len(set(counts.values())) != 1:
            print(f"ENGINE DISAGREEMENT on {label}: {counts}")
            return 1
        if len(engines) == 2:
            row += f" {times['numpy'] / times['ext']:>8.1f}x"
        row += f" {counts[engines[0]]:>12d}"
        print(row)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
