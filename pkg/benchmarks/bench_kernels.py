"""Time the compiled kernels against their plain-Python fallback.

    python3 benchmarks/bench_kernels.py            # both modes, side by side
    python3 benchmarks/bench_kernels.py --worker   # current mode only, JSON out

The fallback is selected with ZASSENHAUS_NUMBA=0, which must be set before the
package is imported, so each mode runs in its own subprocess.
"""
from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np


def _best(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def _system(nv: int, seed: int):
    """Random sparse inequalities plus sum(x) = 1 inside [-3, 3]^nv."""
    rng = np.random.default_rng(seed)
    rows = [np.ones(nv, np.int64)]
    consts = [-1]
    kinds = [0]
    for _ in range(3 * nv):
        r = rng.integers(-2, 3, nv)
        rows.append(r)
        consts.append(int(rng.integers(0, 6)))
        kinds.append(1)
    A = np.asarray(rows, np.int64)
    return (A, np.asarray(consts, np.int64), np.asarray(kinds, np.int64),
            np.ones(len(rows), np.int64), np.full(nv, -3, np.int64), np.full(nv, 3, np.int64))


def worker(repeat: int) -> dict:
    from zassenhaus import _accel, kernels, library

    G = library.metacyclic(60, 4, 7, 0, name="C60:C4")
    out = {"numba": _accel.NUMBA_ENABLED}
    # first call compiles (or loads the cache); keep it out of the timing
    kernels.conjugacy_labels(G.mul, G.inv)
    kernels.element_orders(G.mul)
    out["conjugacy_labels[240]"] = _best(lambda: kernels.conjugacy_labels(G.mul, G.inv), repeat)
    out["element_orders[240]"] = _best(lambda: kernels.element_orders(G.mul), repeat)
    A, c, kind, mod, lo, hi = _system(7, 11)
    buf = np.empty((1 << 16, 7), np.int64)
    kernels.enumerate_bnb(A, c, kind, mod, lo, hi, 10 ** 7, 30, buf)
    kernels.enumerate_naive(A, c, kind, mod, lo, hi, buf)
    out["enumerate_bnb[7 vars]"] = _best(
        lambda: kernels.enumerate_bnb(A, c, kind, mod, lo, hi, 10 ** 7, 30, buf), repeat)
    out["enumerate_naive[7 vars]"] = _best(
        lambda: kernels.enumerate_naive(A, c, kind, mod, lo, hi, buf), repeat)
    return out


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--worker", action="store_true")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if args.worker:
        print(json.dumps(worker(args.repeat)))
        return
    results = {}
    for flag in ("1", "0"):
        env = dict(os.environ, ZASSENHAUS_NUMBA=flag)
        proc = subprocess.run([sys.executable, __file__, "--worker", "--repeat", str(args.repeat)],
                              env=env, capture_output=True, text=True, check=True)
        results[flag] = json.loads(proc.stdout)
    fast, slow = results["1"], results["0"]
    print(f"{'kernel':28s} {'numba [s]':>11s} {'python [s]':>11s} {'speedup':>8s}")
    for k in fast:
        if k == "numba":
            continue
        print(f"{k:28s} {fast[k]:11.5f} {slow[k]:11.5f} {slow[k] / fast[k]:7.1f}x")
    if not fast["numba"]:
        print("note: numba unavailable, both columns used the fallback")


if __name__ == "__main__":
    main()
