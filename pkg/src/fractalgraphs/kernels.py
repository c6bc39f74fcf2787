"""Kernel selection: the compiled extension when importable, else the numpy fallback.

Set ``FRACTALGRAPHS_PURE=1`` to force the fallback.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import _pykernels

if os.environ.get("FRACTALGRAPHS_PURE", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = "cython" if _impl is not _pykernels else "python"

VARIANT_CODES = {"looped": 0, "simple": 1, "clustered": 2}


def edge_matrix(g, n, variant="looped", impl=None):
    impl = impl or _impl
    types = np.asarray(g.types, dtype=np.int8)
    adj = np.zeros((g.N, g.N), dtype=np.uint8)
    re = np.zeros((g.N, g.N), dtype=np.uint8)
    for a, b in g.E:
        adj[a, b] = adj[b, a] = 1
    for a, b in g.RE:
        re[a, b] = re[b, a] = 1
    return np.asarray(impl.edge_matrix(types, adj, re, n, VARIANT_CODES[variant]))


def bfs_row(indptr, indices, src, impl=None):
    impl = impl or _impl
    return np.asarray(impl.bfs_row(indptr, indices, src))


def bfs_stats(indptr, indices, threads=1, impl=None):
    """All-pairs BFS summary: (distance sum, max distance, unreachable pairs).

    Sources are split into contiguous chunks; partial results are reduced in
    chunk order, so the answer does not depend on ``threads``.
    """
    impl = impl or _impl
    V = len(indptr) - 1
    threads = max(1, min(threads, V))
    bounds = np.linspace(0, V, threads + 1).astype(int)
    chunks = list(zip(bounds[:-1], bounds[1:]))
    if threads == 1:
        parts = [impl.bfs_stats(indptr, indices, 0, V)]
    else:
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(lambda c: impl.bfs_stats(indptr, indices, int(c[0]), int(c[1])), chunks))
    total = sum(p[0] for p in parts)
    ecc = max(p[1] for p in parts)
    unreachable = sum(p[2] for p in parts)
    return int(total), int(ecc), int(unreachable)
