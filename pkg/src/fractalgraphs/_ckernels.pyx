# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: adjacency raster of the level-n graph and all-pairs BFS."""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free

cnp.import_array()


def edge_matrix(const signed char[:] types, const unsigned char[:, :] adj,
                const unsigned char[:, :] re, int n, int variant):
    """0/1 adjacency over all words; variant 0=looped, 1=simple, 2=clustered."""
    cdef Py_ssize_t N = types.shape[0]
    cdef Py_ssize_t V = N ** n
    cdef cnp.ndarray[cnp.uint8_t, ndim=2] out = np.zeros((V, V), dtype=np.uint8)
    cdef unsigned char[:, :] o = out
    cdef cnp.ndarray[cnp.int32_t, ndim=2] dig = np.empty((V, n), dtype=np.int32)
    cdef int[:, :] d = dig
    cdef Py_ssize_t i, j, k, pos
    cdef Py_ssize_t rem
    cdef int a, b, ta, tb, ok
    for i in range(V):
        rem = i
        for k in range(n - 1, -1, -1):
            d[i, k] = rem % N
            rem = rem // N
    with nogil:
        for i in range(V):
            if variant == 0:
                o[i, i] = 1
            for j in range(i + 1, V):
                pos = 0
                while d[i, pos] == d[j, pos]:
                    pos += 1
                if variant == 2 and pos == n - 1 and re[d[i, pos], d[j, pos]]:
                    o[i, j] = 1
                    o[j, i] = 1
                    continue
                ta = types[d[i, pos]]
                tb = types[d[j, pos]]
                if ta == tb:
                    continue
                ok = 1
                for k in range(pos, n):
                    a = d[i, k]
                    b = d[j, k]
                    if types[a] != ta or types[b] != tb or not adj[a, b]:
                        ok = 0
                        break
                if ok:
                    o[i, j] = 1
                    o[j, i] = 1
    return out


cdef void _bfs(const int[:] indptr, const int[:] indices, Py_ssize_t src,
               int* dist, int* queue) nogil:
    cdef Py_ssize_t V = indptr.shape[0] - 1
    cdef Py_ssize_t head = 0, tail = 0, u, e, w
    for u in range(V):
        dist[u] = -1
    dist[src] = 0
    queue[tail] = <int>src
    tail += 1
    while head < tail:
        u = queue[head]
        head += 1
        for e in range(indptr[u], indptr[u + 1]):
            w = indices[e]
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue[tail] = <int>w
                tail += 1


def bfs_row(const int[:] indptr, const int[:] indices, Py_ssize_t src):
    """Distances from ``src``; -1 marks unreachable vertices."""
    cdef Py_ssize_t V = indptr.shape[0] - 1
    cdef cnp.ndarray[cnp.int32_t, ndim=1] dist = np.empty(V, dtype=np.int32)
    cdef int[:] dv = dist
    cdef int* queue = <int*>malloc(V * sizeof(int))
    if queue == NULL:
        raise MemoryError()
    try:
        with nogil:
            _bfs(indptr, indices, src, &dv[0], queue)
    finally:
        free(queue)
    return dist


def bfs_stats(const int[:] indptr, const int[:] indices, Py_ssize_t start, Py_ssize_t stop):
    """(sum of finite distances, max distance, unreachable ordered pairs) for sources in [start, stop)."""
    cdef Py_ssize_t V = indptr.shape[0] - 1
    cdef long long total = 0, unreachable = 0
    cdef int ecc = 0
    cdef Py_ssize_t s, u
    cdef int* dist = <int*>malloc(V * sizeof(int))
    cdef int* queue = <int*>malloc(V * sizeof(int))
    if dist == NULL or queue == NULL:
        free(dist)
        free(queue)
        raise MemoryError()
    with nogil:
        for s in range(start, stop):
            _bfs(indptr, indices, s, dist, queue)
            for u in range(V):
                if dist[u] < 0:
                    unreachable += 1
                else:
                    total += dist[u]
                    if dist[u] > ecc:
                        ecc = dist[u]
    free(dist)
    free(queue)
    return total, ecc, unreachable
