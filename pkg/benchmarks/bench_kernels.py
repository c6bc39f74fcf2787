"""Time the compiled kernels against the numpy/pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--base tests/data/cherry.bg] [--n 6] [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from fractalgraphs import _pykernels, kernels
from fractalgraphs.base_graph import load_base_graph
from fractalgraphs.hiergraph import HierGraphView

try:
    from fractalgraphs import _ckernels
except ImportError:
    _ckernels = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--base", default="tests/data/cherry.bg")
    ap.add_argument("--n", type=int, default=6)
    ap.add_argument("--bfs-n", type=int, default=5)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    g = load_base_graph(args.base)
    impls = [("python", _pykernels)] + ([("cython", _ckernels)] if _ckernels else [])
    if _ckernels is None:
        print("compiled extension not built; timing the fallback only")

    print(f"edge_matrix  N={g.N} n={args.n} side={g.N ** args.n}")
    results = {}
    for name, impl in impls:
        t, m = best_of(lambda: kernels.edge_matrix(g, args.n, "looped", impl=impl), args.repeat)
        results[name] = m
        print(f"  {name:7s} {t * 1e3:10.2f} ms")
    if len(results) == 2:
        assert np.array_equal(results["python"], results["cython"])

    indptr, indices = HierGraphView(g, args.bfs_n).csr()
    print(f"bfs_stats    V={len(indptr) - 1} all sources")
    stats = {}
    for name, impl in impls:
        t, s = best_of(lambda: kernels.bfs_stats(indptr, indices, 1, impl=impl), args.repeat)
        stats[name] = s
        print(f"  {name:7s} {t * 1e3:10.2f} ms  (sum={s[0]}, ecc={s[1]})")
    if len(stats) == 2:
        assert stats["python"] == stats["cython"]


if __name__ == "__main__":
    main()
