#!/usr/bin/env python3
"""Numba kernels vs the numpy fallback.

Times each hot kernel on realistic inputs (Cayley table of W_8 / W_10,
the signed-vector scan for g = 6) and then one end-to-end classification
run per backend.  The end-to-end runs happen in subprocesses with
WEIL_LAB_NUMBA set, so the import-time switch is exercised too.

Usage:
    python benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import os
import subprocess
import sys
import time

import numpy as np

from weil_lab import _kernels
from weil_lab.groups import CayleyTable, full_group
from weil_lab.wpr import signed_vectors


def best_of(fn, repeat):
    fn()  # warm-up, includes jit compilation
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def same(a, b):
    if isinstance(a, list):
        return len(a) == len(b) and all(np.array_equal(x, y) for x, y in zip(a, b))
    return np.array_equal(a, b)


def kernel_cases(rng):
    ct = CayleyTable(4, full_group(4).elements)  # |W_8| = 384
    gens = rng.integers(0, ct.n, size=(200, 2))
    members = _kernels.closure(ct.mult, gens[0], ct.n)
    conj_by = np.arange(ct.n)
    target = np.zeros(ct.n, dtype=np.bool_)
    target[members] = True

    tv = np.array(signed_vectors(6), dtype=np.int64)
    rows = rng.integers(0, 4, size=(720, 6)) * 2
    rhs = 3 * tv.sum(axis=1)

    def closure(flag):
        return lambda: [_kernels.closure(ct.mult, g, ct.n, use_numba=flag) for g in gens]

    def conjugator(flag):
        return lambda: _kernels.find_conjugator(ct.mult, ct.inv, members, np.zeros_like(target),
                                                conj_by, use_numba=flag)

    def min_conj(flag):
        return lambda: _kernels.min_conjugate(ct.mult, ct.inv, members, conj_by, use_numba=flag)

    def scan(flag):
        return lambda: _kernels.signed_scan(rows, tv, rhs, use_numba=flag)

    return [("closure x200 (W_8)", closure), ("find_conjugator miss (W_8)", conjugator),
            ("min_conjugate (W_8)", min_conj), ("signed_scan g=6", scan)]


END_TO_END = ("from weil_lab.classify import classify_newton; import time; "
              "classify_newton(3, '0,0,1/2,1/2,1,1'); t=time.perf_counter(); "
              "classify_newton(5, '0,0,0,0,1/2,1/2,1,1,1,1'); "
              "classify_newton(5, '1/4,1/4,1/4,1/4,1/2,1/2,3/4,3/4,3/4,3/4'); "
              "print(time.perf_counter()-t)")


def end_to_end(flag):
    env = dict(os.environ, WEIL_LAB_NUMBA=flag)
    out = subprocess.run([sys.executable, "-c", END_TO_END], env=env, capture_output=True,
                         text=True, check=True)
    return float(out.stdout.strip().splitlines()[-1])


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _kernels._nb is None:
        sys.exit("numba is not available; nothing to compare")
    rng = np.random.default_rng(0)
    print(f"{'kernel':32s} {'numpy ms':>10s} {'numba ms':>10s} {'speedup':>8s}")
    for name, make in kernel_cases(rng):
        a = make(False)()
        b = make(True)()
        assert same(a, b), name
        t_np = best_of(make(False), args.repeat)
        t_nb = best_of(make(True), args.repeat)
        print(f"{name:32s} {1e3 * t_np:10.2f} {1e3 * t_nb:10.2f} {t_np / t_nb:8.1f}x")
    # second run of each so numba's on-disk cache is warm
    end_to_end("1"), end_to_end("0")
    t_nb, t_np = end_to_end("1"), end_to_end("0")
    print(f"{'classify two g=5 polygons':32s} {1e3 * t_np:10.0f} {1e3 * t_nb:10.0f} {t_np / t_nb:8.1f}x")


if __name__ == "__main__":
    main()
