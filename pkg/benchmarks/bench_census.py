#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Covers the three hot loops: the idempotent census scan, encoded row
reduction of the derivation (Leibniz) system, and batched products.  Run
with OKUBO_PURE_NUMPY unset so both implementations are importable; the
numba side gets a warmup call before timing so JIT compilation is not
measured.

    python benchmarks/bench_census.py [--full]

--full adds the 5.76M-candidate census over gf(7).
"""

import argparse
import random
import statistics
import time

from okubo import _kernels
from okubo.fields import field_from_spec
from okubo.liealg import leibniz_system
from okubo.models import build_split_okubo


def timeit(fn, repeats=5):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def bench_census(spec, impls, repeats):
    field = field_from_spec(spec)
    algebra = build_split_okubo(field)
    rows = {}
    for name, impl in impls.items():
        fn = lambda: _kernels.census_codes(field, algebra.entries, 8, impl=impl)
        fn()  # warmup (JIT compile / cache priming)
        rows[name] = timeit(fn, repeats)
    counts = {
        name: _kernels.census_codes(field, algebra.entries, 8, impl=impl).size
        for name, impl in impls.items()
    }
    assert len(set(counts.values())) == 1, f"backends disagree: {counts}"
    return rows, counts.popitem()[1]


def bench_rref(spec, impls, repeats):
    field = field_from_spec(spec)
    algebra = build_split_okubo(field)
    system = leibniz_system(algebra)
    arr = _kernels.encode_rows(field, [list(r) for r in system.rows])
    rows = {}
    for name, impl in impls.items():
        fn = lambda: _kernels.rref_encoded(field, arr, impl=impl)
        fn()
        rows[name] = timeit(fn, repeats)
    ranks = {
        name: len(_kernels.rref_encoded(field, arr, impl=impl)[1])
        for name, impl in impls.items()
    }
    assert len(set(ranks.values())) == 1, f"backends disagree: {ranks}"
    return rows, arr.shape


def bench_batch(spec, repeats, batch=20000):
    field = field_from_spec(spec)
    algebra = build_split_okubo(field)
    rng = random.Random(0)
    X = _kernels.random_coord_batch(field, rng, batch, 8)
    Y = _kernels.random_coord_batch(field, rng, batch, 8)
    fn = lambda: _kernels.batch_multiply(field, algebra.entries, X, Y)
    fn()
    return timeit(fn, repeats)


def fmt(seconds):
    return f"{seconds * 1e3:9.2f} ms"


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--full", action="store_true",
                        help="include the gf(7) census (5.76M candidates)")
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    impls_census = _kernels.implementations()["census"]
    impls_rref = _kernels.implementations()["rref"]
    print(f"active backend: {_kernels.backend_name()}")
    if "numba" not in impls_census:
        print("numba unavailable or disabled; timing the numpy path only\n")

    specs = ["gf(3)", "gf(5)"]
    if args.full:
        specs.append("gf(7)")
    print("== idempotent census scan (whole coordinate space) ==")
    for spec in specs:
        rows, found = bench_census(spec, impls_census, args.repeats)
        cells = "  ".join(f"{name}: {fmt(t)}" for name, t in sorted(rows.items()))
        print(f"  {spec:22s} {cells}   ({found} idempotents)")

    print("== encoded RREF of the 512x64 derivation system ==")
    for spec in ("gf(3)", "gf(3^2;t^2+1)"):
        rows, shape = bench_rref(spec, impls_rref, args.repeats)
        cells = "  ".join(f"{name}: {fmt(t)}" for name, t in sorted(rows.items()))
        print(f"  {spec:22s} {cells}   (system {shape[0]}x{shape[1]})")

    print("== batched bilinear products, 20k pairs (shared numpy helper) ==")
    for spec in ("gf(3)", "gf(7)"):
        t = bench_batch(spec, args.repeats)
        print(f"  {spec:22s} numpy: {fmt(t)}")


if __name__ == "__main__":
    main()
