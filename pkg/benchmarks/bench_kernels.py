"""Timing comparison of the numba kernels against the pure-numpy fallbacks.

Run:  python3 benchmarks/bench_kernels.py [--repeats N]

The first numba call per dtype signature includes compilation; one warmup
call per kernel is made before timing so the table reflects steady state.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from qmotif._kernels import BACKEND, IMPLEMENTATIONS


def _time(fn, *args, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_table(r: int, nterms: int, repeats: int) -> dict[str, float]:
    rng = np.random.default_rng(1)
    masks = rng.integers(1, 1 << r, size=nterms).astype(np.uint64)
    coeffs = rng.normal(size=nterms)
    out = {}
    for name, impl in IMPLEMENTATIONS.items():
        if impl["table"] is None:
            continue
        impl["table"](masks, coeffs, 0.0, r)  # warmup / compile
        out[name] = _time(impl["table"], masks, coeffs, 0.0, r, repeats=repeats)
    return out


def bench_mixer(r: int, repeats: int) -> dict[str, float]:
    rng = np.random.default_rng(2)
    amps = rng.normal(size=1 << r) + 1j * rng.normal(size=1 << r)
    amps /= np.linalg.norm(amps)
    cos_b, sin_b = np.cos(0.4), np.sin(0.4)
    out = {}
    for name, impl in IMPLEMENTATIONS.items():
        if impl["mixer"] is None:
            continue
        impl["mixer"](amps.copy(), cos_b, sin_b, r)  # warmup / compile
        out[name] = _time(lambda: impl["mixer"](amps.copy(), cos_b, sin_b, r),
                          repeats=repeats)
    return out


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    print(f"active backend: {BACKEND}")
    print(f"{'kernel':<10}{'r':>4}{'terms':>8}{'numpy':>12}{'numba':>12}{'speedup':>10}")
    for r in (8, 12, 16, 20):
        nterms = 4 * r
        res = bench_table(r, nterms, args.repeats)
        np_t = res.get("numpy", float("nan"))
        nb_t = res.get("numba", float("nan"))
        ratio = np_t / nb_t if nb_t else float("nan")
        print(f"{'table':<10}{r:>4}{nterms:>8}{np_t * 1e3:>10.2f}ms{nb_t * 1e3:>10.2f}ms{ratio:>9.1f}x")
    for r in (8, 12, 16, 20):
        res = bench_mixer(r, args.repeats)
        np_t = res.get("numpy", float("nan"))
        nb_t = res.get("numba", float("nan"))
        ratio = np_t / nb_t if nb_t else float("nan")
        print(f"{'mixer':<10}{r:>4}{'':>8}{np_t * 1e3:>10.2f}ms{nb_t * 1e3:>10.2f}ms{ratio:>9.1f}x")


if __name__ == "__main__":
    main()
