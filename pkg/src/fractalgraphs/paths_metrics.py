"""Shortest paths in the looped hierarchical graph: explicit construction and BFS oracles.

Distances ignore loops throughout.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import kernels
from .base_graph import BaseGraph
from .hiergraph import HierGraphView
from .symbolic import Word, block_count, block_decompose, split_common_prefix, word_index


@dataclass(frozen=True)
class PMap:
    mapping: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    def word(self, z: Word) -> Word:
        return tuple(self.mapping[d] for d in z)


@dataclass(frozen=True)
class PathReport:
    path: tuple[Word, ...]
    lower: int
    upper: int

    @property
    def length(self) -> int:
        return len(self.path) - 1


def choose_p_map(g: BaseGraph, strategy: str = "smallest-neighbor") -> PMap:
    if strategy != "smallest-neighbor":
        raise ValueError(f"unknown strategy {strategy!r}")
    for x in range(g.N):
        if not g.adj[x]:
            raise ValueError(f"vertex {x} is isolated in G")
    return PMap(tuple(a[0] for a in g.adj))


def _base_path(g: BaseGraph, a: int, b: int) -> list[int]:
    prev = {a: None}
    queue = deque([a])
    while queue:
        u = queue.popleft()
        if u == b:
            break
        for w in g.adj[u]:
            if w not in prev:
                prev[w] = u
                queue.append(w)
    path = [b]
    while path[-1] != a:
        path.append(prev[path[-1]])
    return path[::-1]


def _padded_walk(g: BaseGraph, a: int, b: int, length: int) -> list[int]:
    # shortest path, then bounce on the last edge until the length is reached
    walk = _base_path(g, a, b)
    while len(walk) - 1 < length:
        last = walk[-1]
        back = walk[-2] if len(walk) > 1 else g.adj[last][0]
        walk.extend([back, last])
    return walk


def _connector(g: BaseGraph, u: Word, v: Word) -> list[Word]:
    """Walk between uniform-type words u, v changing every digit each step.

    Its length is the largest digit-wise base distance, hence at most Diam(G).
    """
    dist = g.distances
    steps = max(dist[a][b] for a, b in zip(u, v))
    walks = [_padded_walk(g, a, b, steps) for a, b in zip(u, v)]
    return [tuple(w[i] for w in walks) for i in range(steps + 1)]


def _half_path(x_post: Word, p: PMap, g: BaseGraph) -> list[Word]:
    """Postfixes x^0, ..., x^{r-1}: the last block is replaced by its p-image and merged."""
    blocks = block_decompose(x_post, g).blocks
    seq = [x_post]
    tail: Word = blocks[-1]
    for i in range(len(blocks) - 1, 0, -1):
        tail = p.word(tail)
        seq.append(sum(blocks[:i], ()) + tail)
        if i > 1:
            tail = blocks[i - 1] + tail
    return seq


def construct_short_path(g: BaseGraph, n: int, x: Word, y: Word, p: PMap | None = None) -> PathReport:
    if len(x) != n or len(y) != n:
        raise ValueError("words must have length n")
    if not g.connected:
        raise ValueError("base graph must be connected")
    if x == y:
        return PathReport((x,), 0, 0)
    p = p or choose_p_map(g)
    k, xt, yt = split_common_prefix(x, y)
    head = x[:k]
    px = _half_path(xt, p, g)
    py = _half_path(yt, p, g)
    mid = _connector(g, px[-1], py[-1])
    posts = px[:-1] + mid + py[-2::-1]
    r, q = len(px), len(py)
    return PathReport(tuple(head + w for w in posts), r + q - 1, r + q + g.diam - 2)


def path_bounds(g: BaseGraph, x: Word, y: Word) -> tuple[int, int]:
    if x == y:
        return 0, 0
    _, xt, yt = split_common_prefix(x, y)
    r, q = block_count(xt, g), block_count(yt, g)
    return r + q - 1, r + q + g.diam - 2


def is_valid_walk(v: HierGraphView, path) -> bool:
    return all(a != b and v.is_edge(a, b) for a, b in zip(path, path[1:]))


def bfs_distance(v: HierGraphView, x: Word, y: Word) -> int | None:
    """Exact loop-free distance, None if unreachable."""
    indptr, indices = v.csr()
    N = v.base.N
    d = int(kernels.bfs_row(indptr, indices, word_index(x, N))[word_index(y, N)])
    return None if d < 0 else d


def distance_matrix(v: HierGraphView) -> np.ndarray:
    indptr, indices = v.csr()
    return np.stack([kernels.bfs_row(indptr, indices, s) for s in range(v.num_vertices)])


def diameter(v: HierGraphView, threads: int = 1) -> int:
    if not v.base.connected:
        raise ValueError("base graph must be connected")
    indptr, indices = v.csr()
    return kernels.bfs_stats(indptr, indices, threads)[1]


def diameter_bound(g: BaseGraph, n: int) -> int:
    return 2 * n + g.diam - 2


def lazy_bfs(v: HierGraphView, x: Word, y: Word) -> int:
    """BFS on neighbor queries only; used where materializing the graph is too costly."""
    if x == y:
        return 0
    seen = {x}
    frontier = [x]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for u in frontier:
            for w in v.neighbors(u):
                if w not in seen:
                    if w == y:
                        return d
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    raise ValueError(f"{y} unreachable from {x}")


def expected_block_count(g: BaseGraph, n: int) -> Fraction:
    """Closed form 1 + (n - (1 - N^-n)/(N-1) - 1) * 2 n1 n2 / N^2, exact."""
    N = g.N
    c = Fraction(2 * g.n1 * g.n2, N * N)
    ek = Fraction(1, N - 1) * (1 - Fraction(1, N**n))
    return 1 + (n - ek - 1) * c


def enumerated_block_count(g: BaseGraph, n: int) -> Fraction:
    """Mean of R over all ordered pairs, R = 1 + number of type changes in x's postfix.

    For x == y the postfix is empty and R = 1 (the empty indicator sum).
    """
    v = HierGraphView(g, n)
    words = list(v.words())
    total = 0
    for x in words:
        for y in words:
            _, xt, _ = split_common_prefix(x, y)
            total += block_count(xt, g) if xt else 1
    return Fraction(total, len(words) ** 2)


def distance_bounds(g: BaseGraph, n: int) -> tuple[Fraction, Fraction]:
    lo = Fraction(4 * g.n1 * g.n2 * (n - 1), g.N**2)
    return lo, g.N + lo


@dataclass
class DistanceReport:
    n: int
    variant: str
    mean: float
    lower: Fraction
    upper: Fraction
    expected_R: Fraction
    empirical_R: float
    diameter: int | None = None
    diameter_bound: int | None = None
    sample_meta: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "variant": self.variant,
            "diameter": self.diameter,
            "diameter_bound": self.diameter_bound,
            "mean_distance": self.mean,
            "bounds": [float(self.lower), float(self.upper)],
            "E_R": float(self.expected_R),
            "E_R_exact": str(self.expected_R),
            "empirical_R": self.empirical_R,
            "sample_meta": self.sample_meta,
        }


def average_distance(v: HierGraphView, mode: str = "exact", samples: int = 1000, seed: int = 0, threads: int = 1) -> DistanceReport:
    """Mean loop-free distance over uniformly chosen ordered pairs (x == y allowed)."""
    g = v.base
    if not g.connected:
        raise ValueError("base graph must be connected")
    lo, hi = distance_bounds(g, v.n)
    er = expected_block_count(g, v.n)
    if mode == "exact":
        indptr, indices = v.csr()
        total, ecc, unreachable = kernels.bfs_stats(indptr, indices, threads)
        V = v.num_vertices
        mean = total / V**2
        words = list(v.words())
        r_sum = sum(block_count(split_common_prefix(x, y)[1], g) or 1 for x in words for y in words) if V <= 4096 else None
        emp_r = r_sum / V**2 if r_sum is not None else float("nan")
        return DistanceReport(v.n, v.variant, mean, lo, hi, er, emp_r, ecc, diameter_bound(g, v.n), {"mode": "exact"})
    if mode == "sampled":
        if samples < 1:
            raise ValueError("need at least one sample")
        rng = random.Random(seed)
        N, n = g.N, v.n
        dsum = rsum = 0
        for _ in range(samples):
            x = tuple(rng.randrange(N) for _ in range(n))
            y = tuple(rng.randrange(N) for _ in range(n))
            dsum += lazy_bfs(v, x, y)
            rsum += block_count(split_common_prefix(x, y)[1], g) or 1
        meta = {"mode": "sampled", "samples": samples, "seed": seed, "generator_id": "python.random.Random"}
        return DistanceReport(v.n, v.variant, dsum / samples, lo, hi, er, rsum / samples, None, diameter_bound(g, n), meta)
    raise ValueError(f"unknown mode {mode!r}")
