"""Time the numba kernels against their numpy twins.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--format text|csv]

Both variants are called directly from ``tuttekit.kernels.KERNELS``, so the
TUTTEKIT_DISABLE_NUMBA flag does not matter here.  The first numba call is
made before timing so compilation is excluded.
"""
from __future__ import annotations

import argparse
import csv
import sys
import time

import numpy as np

from tuttekit import kernels
from tuttekit._accel import HAVE_NUMBA
from tuttekit.families import clan_cyclic, complete, sq_strip


def _edges(g):
    eu, ev = g.arrays()
    return np.ascontiguousarray(eu), np.ascontiguousarray(ev)


def cases():
    """(kernel name, label, argument tuple)."""
    gsq = sq_strip(2, 5, "free", "periodic")  # 10 vertices, 15 edges
    g14 = clan_cyclic(2, 3).delete_edge(0)
    k6 = complete(6)
    rng = np.random.default_rng(0)
    deg = 60
    c = rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1)
    z0 = 1.2 * np.exp(2j * np.pi * np.arange(deg) / deg + 0.3)
    C = rng.normal(size=(20000, 5)) + 1j * rng.normal(size=(20000, 5))
    M = kernels._cycle_matrix(k6.n, *k6.arrays())
    return [
        ("subset_histogram", f"sq 2x5 P ({gsq.m} edges)", (gsq.n, *_edges(gsq))),
        ("acyclic_count", f"clan r=2 m=3 minus an edge ({g14.m} edges)", (g14.n, *_edges(g14))),
        ("coloring_count", "K6, q=5", (k6.n, *_edges(k6), 5)),
        ("flow_count", "K6, q=4", (M, 4)),
        ("aberth", f"degree {deg}", (c, z0, 1e-14, 500)),
        ("batched_roots", "20000 quartics", (C,)),
    ]


def _time(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn(*[a.copy() if isinstance(a, np.ndarray) else a for a in args])
        best = min(best, time.perf_counter() - t)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--format", choices=("text", "csv"), default="text")
    args = ap.parse_args(argv)
    if not HAVE_NUMBA:
        print("numba is not installed; nothing to compare", file=sys.stderr)
        return 1
    rows = []
    for name, label, a in cases():
        nb, npy = kernels.KERNELS[name]
        nb(*a)  # compile
        t_nb = _time(nb, a, args.repeat)
        t_np = _time(npy, a, args.repeat)
        rows.append((name, label, t_nb, t_np, t_np / t_nb if t_nb else float("inf")))
    if args.format == "csv":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["kernel", "case", "numba_s", "numpy_s", "speedup"])
        for r in rows:
            w.writerow([r[0], r[1], f"{r[2]:.6f}", f"{r[3]:.6f}", f"{r[4]:.2f}"])
    else:
        print(f"{'kernel':18} {'case':40} {'numba s':>10} {'numpy s':>10} {'speedup':>8}")
        for r in rows:
            print(f"{r[0]:18} {r[1]:40} {r[2]:10.5f} {r[3]:10.5f} {r[4]:8.1f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
