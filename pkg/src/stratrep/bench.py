"""Benchmark the compiled kernel backend against the vectorized one.

Runs the exhaustive family error scan on a synthetic workload with both
backends and prints throughput.  Usage: python -m stratrep.bench [--bits B]
"""
from __future__ import annotations

import argparse
import random
import time

from . import _kernels


def _workload(bits: int, items: int, seed: int = 0):
    rng = random.Random(seed)
    cols = [rng.getrandbits(bits) for _ in range(items)]
    pos = [rng.randint(0, 1) for _ in range(items)]
    weights = [rng.randint(1, 100) for _ in range(items)]
    return cols, pos, weights


def _run(backend: str, cols, pos, weights, nfam, repeats: int):
    import os

    os.environ["STRATREP_BACKEND"] = backend
    # warm-up (includes jit compilation for the compiled backend)
    _kernels.min_error_scan(cols, pos, weights, min(nfam, 1 << 10))
    best = None
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = _kernels.min_error_scan(cols, pos, weights, nfam)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return result, best


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bits", type=int, default=18,
                    help="candidate-subset count B; scans 2^B families")
    ap.add_argument("--items", type=int, default=56)
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args(argv)

    cols, pos, weights = _workload(args.bits, args.items)
    nfam = 1 << args.bits
    backends = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])
    results = {}
    for b in backends:
        (f, e), dt = _run(b, cols, pos, weights, nfam, args.repeats)
        results[b] = (f, e, dt)
        rate = nfam * args.items / dt / 1e6
        print(f"{b:6s}: best={dt * 1e3:8.2f} ms  "
              f"({rate:8.1f} M item-evals/s)  min_err={e} at family {f:#x}")
    if len(results) == 2:
        assert results["numba"][:2] == results["numpy"][:2], "backend mismatch"
        print(f"speedup numba/numpy: {results['numpy'][2] / results['numba'][2]:.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
