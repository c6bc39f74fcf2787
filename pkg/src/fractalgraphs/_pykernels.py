"""Pure-Python/numpy versions of the compiled kernels, same signatures."""

from __future__ import annotations

from collections import deque

import numpy as np


def edge_matrix(types, adj, re, n, variant):
    # block recursion: A_n = I_N (x) A_{n-1} + K12^{(x)n} + K21^{(x)n}
    types = np.asarray(types)
    adj = np.asarray(adj, dtype=np.uint8)
    N = len(types)
    k12 = adj * np.outer(types == 1, types == 2).astype(np.uint8)
    k21 = k12.T.copy()
    a = k12 + k21
    p12, p21 = k12, k21
    for _ in range(1, n):
        p12 = np.kron(p12, k12)
        p21 = np.kron(p21, k21)
        a = np.kron(np.eye(N, dtype=np.uint8), a) + p12 + p21
    if variant == 0:
        a[np.diag_indices_from(a)] = 1
    elif variant == 2:
        a = a + np.kron(np.eye(N ** (n - 1), dtype=np.uint8), np.asarray(re, dtype=np.uint8))
    return a.astype(np.uint8)


def bfs_row(indptr, indices, src):
    V = len(indptr) - 1
    dist = [-1] * V
    dist[src] = 0
    queue = deque([src])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for e in range(indptr[u], indptr[u + 1]):
            w = indices[e]
            if dist[w] < 0:
                dist[w] = du
                queue.append(w)
    return np.asarray(dist, dtype=np.int32)


def bfs_stats(indptr, indices, start, stop):
    indptr = list(indptr)
    indices = list(indices)
    total = ecc = unreachable = 0
    for s in range(start, stop):
        for d in bfs_row(indptr, indices, s).tolist():
            if d < 0:
                unreachable += 1
            else:
                total += d
                ecc = max(ecc, d)
    return total, ecc, unreachable
