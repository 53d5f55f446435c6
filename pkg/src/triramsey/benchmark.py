"""Benchmark the numba kernels against the pure-numpy fallback.

Run as ``python -m triramsey.benchmark``.  Both paths compute identical
results; this only reports wall time, after a warm-up call so numba's
JIT compilation is not billed to the measurement.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from . import kernels
from .engine import GameConfig
from .search import partition_census
from .tricore import bracket


def _time(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        started = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - started)
    return best


def bench_closure(nbits: int, repeats: int) -> dict:
    rng = np.random.default_rng(12345)
    seeds = rng.integers(0, 1 << nbits, size=64).tolist()

    def run(backend: str) -> np.ndarray:
        words = kernels.new_bitset(nbits)
        kernels.set_bits(words, seeds)
        kernels.closure_up(words, nbits, backend=backend)
        return words

    results = {}
    outputs = {}
    for backend in ("numpy",) + (("numba",) if kernels.HAS_NUMBA else ()):
        run(backend)  # warm-up / JIT
        results[backend] = _time(lambda: run(backend), repeats)
        outputs[backend] = run(backend)
    if len(outputs) == 2 and not np.array_equal(outputs["numpy"], outputs["numba"]):
        raise AssertionError("kernel backends disagree on the closure bitmap")
    return results


def bench_census(m: int, repeats: int) -> dict:
    config = GameConfig(m, 4, 4, 1) if m >= 4 else GameConfig(m, 2, 2, 1)
    results = {}
    census = {}
    for backend in ("numpy",) + (("numba",) if kernels.HAS_NUMBA else ()):
        partition_census(config, backend=backend)  # warm-up / JIT
        results[backend] = _time(lambda: partition_census(config, backend=backend), repeats)
        census[backend] = partition_census(config, backend=backend)
    if len(census) == 2 and census["numpy"] != census["numba"]:
        raise AssertionError("kernel backends disagree on the census")
    return results


def bench_sweep(limit: int, repeats: int) -> dict:
    off = float(bracket(5, 3))
    results = {}
    crossings = {}
    for backend in ("numpy",) + (("numba",) if kernels.HAS_NUMBA else ()):
        kernels.theorem9_sweep(5, 5, 5, off, off, 1000, backend=backend)  # warm-up
        results[backend] = _time(
            lambda: kernels.theorem9_sweep(5, 5, 5, off, off, limit, backend=backend),
            repeats,
        )
        crossings[backend] = kernels.theorem9_sweep(5, 5, 5, off, off, limit, backend=backend)
    if len(crossings) == 2 and abs(crossings["numpy"] - crossings["numba"]) > 2:
        raise AssertionError("kernel backends disagree on the sweep crossing")
    return results


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--closure-bits", type=int, default=24)
    parser.add_argument("--census-m", type=int, default=6)
    parser.add_argument("--sweep-limit", type=int, default=3_000_000)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args(argv)

    print(f"numba available: {kernels.HAS_NUMBA}")
    rows = [
        (f"bitset closure (2^{args.closure_bits})",
         bench_closure(args.closure_bits, args.repeats)),
        (f"partition census (m={args.census_m})",
         bench_census(args.census_m, args.repeats)),
        (f"log-domain sweep ({args.sweep_limit:,} steps)",
         bench_sweep(args.sweep_limit, args.repeats)),
    ]
    print(f"{'kernel':38} {'numpy':>10} {'numba':>10} {'speedup':>9}")
    for name, timings in rows:
        numpy_t = timings["numpy"]
        numba_t = timings.get("numba")
        speedup = f"{numpy_t / numba_t:6.2f}x" if numba_t else "-"
        numba_s = f"{numba_t:9.4f}s" if numba_t else "-"
        print(f"{name:38} {numpy_t:9.4f}s {numba_s:>10} {speedup:>9}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
