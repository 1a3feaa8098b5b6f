"""Jacobi eigensolver: compiled kernel vs pure-Python fallback vs LAPACK.

    python3 benchmarks/bench_jacobi.py [--dims 8,16,32,64] [--repeat 3]

Prints one row per (dimension, backend) with the best wall time over the
repeats and the largest eigenvalue deviation from ``numpy.linalg.eigvalsh``.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from entrobound.linalg import jacobi_eigh, kernels
from entrobound.rng import CounterRNG
from entrobound.sampling import random_state


def _best_time(fn, repeat: int) -> tuple[float, object]:
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def run(dims, repeat: int) -> list[dict]:
    rows = []
    backends = kernels()
    for d in dims:
        a = random_state(CounterRNG(d), d, rotated=True).entries
        ref = np.sort(np.linalg.eigvalsh(a))[::-1]
        for name, kern in sorted(backends.items()):
            t, (w, _) = _best_time(lambda: jacobi_eigh(a, kernel=kern), repeat)
            rows.append({"d": d, "backend": name, "seconds": t, "max_dev": float(np.max(np.abs(w - ref)))})
        t, _ = _best_time(lambda: np.linalg.eigh(a), repeat)
        rows.append({"d": d, "backend": "numpy", "seconds": t, "max_dev": 0.0})
    return rows


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dims", default="8,16,32,64")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    rows = run([int(x) for x in args.dims.split(",")], args.repeat)
    print(f"{'d':>4}  {'backend':<8} {'seconds':>12} {'max |dw|':>10}")
    for r in rows:
        print(f"{r['d']:>4}  {r['backend']:<8} {r['seconds']:>12.6f} {r['max_dev']:>10.2e}")
    by = {(r["d"], r["backend"]): r["seconds"] for r in rows}
    for d in sorted({r["d"] for r in rows}):
        if (d, "cython") in by:
            print(f"d={d}: cython is {by[(d, 'python')] / by[(d, 'cython')]:.1f}x faster than python")


if __name__ == "__main__":
    main()
