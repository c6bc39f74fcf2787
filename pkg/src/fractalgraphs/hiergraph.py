"""Lazy views of the level-n hierarchical graphs.

Three variants share the vertex set of all length-n words:

* ``looped``    -- the hierarchical graph with a loop on every vertex,
* ``simple``    -- the same graph without loops,
* ``clustered`` -- the simple graph plus RE-edges between last-digit siblings.

Nothing is materialized unless asked for; full enumerations are checked
against ``max_pairs`` (number of vertex pairs) and fail fast.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np

from . import kernels
from .base_graph import BaseGraph, check_regularity_a1
from .symbolic import (
    VARIANTS,
    Word,
    ell,
    format_word,
    index_word,
    split_common_prefix,
    word_index,
)

DEFAULT_MAX_PAIRS = 10**7


class SizeGuardError(RuntimeError):
    """Raised when an enumeration would exceed the configured budget."""


@dataclass(frozen=True)
class HierGraphView:
    base: BaseGraph
    n: int
    variant: str = "looped"
    max_pairs: int = DEFAULT_MAX_PAIRS

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"level must be >= 1, got {self.n}")
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")

    @property
    def num_vertices(self) -> int:
        return self.base.N**self.n

    def guard(self, pairs: int | None = None, flag: str = "--max-pairs"):
        pairs = self.num_vertices**2 if pairs is None else pairs
        if pairs > self.max_pairs:
            raise SizeGuardError(
                f"{pairs} vertex pairs exceed the budget of {self.max_pairs}; raise it with {flag}"
            )

    def with_variant(self, variant: str) -> HierGraphView:
        return HierGraphView(self.base, self.n, variant, self.max_pairs)

    def words(self):
        return product(range(self.base.N), repeat=self.n)

    def _check(self, *ws: Word):
        for w in ws:
            if len(w) != self.n:
                raise ValueError(f"word {w} has length {len(w)}, expected {self.n}")

    def is_edge(self, x: Word, y: Word) -> bool:
        self._check(x, y)
        g = self.base
        k, xt, yt = split_common_prefix(x, y)
        if not xt:
            return self.variant == "looped"
        if self.variant == "clustered" and k == self.n - 1 and g.has_re(xt[0], yt[0]):
            return True
        t = g.types
        tx, ty = t[xt[0]], t[yt[0]]
        if tx == ty:
            return False
        return all(t[a] == tx and t[b] == ty and g.has_edge(a, b) for a, b in zip(xt, yt))

    def neighbors(self, x: Word) -> list[Word]:
        """Neighbors of ``x`` in lexicographic order; includes ``x`` in the looped variant."""
        self._check(x)
        g, n = self.base, self.n
        out = []
        for j in range(1, ell(x, g) + 1):
            head = x[: n - j]
            for tail in product(*(g.adj[d] for d in x[n - j :])):
                out.append(head + tail)
        if self.variant == "clustered":
            out.extend(x[:-1] + (r,) for r in g.re_adj[x[-1]])
        elif self.variant == "looped":
            out.append(x)
        out.sort()
        return out

    def degree(self, x: Word) -> int:
        """Degree by neighbor enumeration; a loop counts twice."""
        nb = self.neighbors(x)
        return len(nb) + (1 if self.variant == "looped" else 0)

    def count_edges(self) -> tuple[int, int]:
        """(loops, undirected non-loop edges) by enumerating every vertex pair."""
        self.guard()
        a = kernels.edge_matrix(self.base, self.n, self.variant)
        loops = int(np.trace(a))
        return loops, int((a.sum() - loops) // 2)

    def adjacency_matrix(self) -> np.ndarray:
        self.guard()
        return kernels.edge_matrix(self.base, self.n, self.variant)

    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """Loop-free adjacency in CSR form, vertices indexed by word order."""
        self.guard()
        N = self.base.N
        indptr = [0]
        indices: list[int] = []
        for x in self.words():
            for y in self.neighbors(x):
                if y != x:
                    indices.append(word_index(y, N))
            indptr.append(len(indices))
        return np.asarray(indptr, dtype=np.int32), np.asarray(indices, dtype=np.int32)

    def iter_edges(self):
        """Undirected edges (x, y) with x <= y in lexicographic order."""
        for x in self.words():
            for y in self.neighbors(x):
                if y >= x:
                    yield x, y

    def export_edges(self, sink, format: str = "edge-list") -> int:
        """Write every undirected edge once to the binary stream ``sink``; returns the count."""
        self.guard()
        N = self.base.N
        count = 0
        if format == "edge-list":
            for x, y in self.iter_edges():
                sink.write(f"{format_word(x, N)} {format_word(y, N)}\n".encode())
                count += 1
        elif format == "dot":
            sink.write(b"graph G {\n")
            for x in self.words():
                sink.write(f'  "{format_word(x, N)}";\n'.encode())
            for x, y in self.iter_edges():
                sink.write(f'  "{format_word(x, N)}" -- "{format_word(y, N)}";\n'.encode())
                count += 1
            sink.write(b"}\n")
        else:
            raise ValueError(f"unknown export format {format!r}")
        return count


@dataclass(frozen=True)
class DegreeLawRow:
    ell: int
    t: int
    predicted_tail: Fraction
    class_count: int
    predicted_class_count: int
    enumerated_tail: Fraction | None
    enumerated_tail_all: Fraction | None


@dataclass(frozen=True)
class DegreeLawReport:
    n: int
    d1: int
    d2: int
    gamma_tilde: float
    rows: tuple[DegreeLawRow, ...]

    @property
    def gamma(self) -> float:
        return 1.0 + self.gamma_tilde

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "d1": self.d1,
            "d2": self.d2,
            "gamma_tilde": self.gamma_tilde,
            "gamma": self.gamma,
            "rows": [
                {
                    "ell": r.ell,
                    "t": r.t,
                    "predicted_tail": str(r.predicted_tail),
                    "class_count": r.class_count,
                    "predicted_class_count": r.predicted_class_count,
                    "enumerated_tail": None if r.enumerated_tail is None else str(r.enumerated_tail),
                    "enumerated_tail_all": None if r.enumerated_tail_all is None else str(r.enumerated_tail_all),
                }
                for r in self.rows
            ],
        }


def degree_scale(d1: int, k: int) -> int:
    """Looped degree (d1^(k+1) - 1)/(d1 - 1) + 1 of a V1-ending word with ell = k."""
    return (d1 ** (k + 1) - 1) // (d1 - 1) + 1


def degree_law(v: HierGraphView, enumerate_words: bool = True) -> DegreeLawReport:
    """Exact degree-tail table of the looped graph under the regularity assumption.

    ``enumerated_tail`` is the fraction of words ending in V1 whose
    brute-force degree exceeds ``t``; ``enumerated_tail_all`` drops the V1
    restriction and only agrees with the prediction above the high-degree
    threshold, where no V2-ending word can reach ``t``.
    """
    g = v.base
    rep = check_regularity_a1(g)
    if not rep.holds:
        raise ValueError(f"regularity assumption violated (d1={rep.d1}, d2={rep.d2})")
    if rep.d1 < 2:
        raise ValueError("degree law needs d1 >= 2")
    d1, n, N = rep.d1, v.n, g.N
    gamma_tilde = math.log(N / g.n1) / math.log(d1)

    degs = None
    if enumerate_words:
        looped = v.with_variant("looped")
        looped.guard()
        degs = [(w, looped.degree(w)) for w in looped.words()]

    rows = []
    total = N**n
    for k in range(n):
        t = degree_scale(d1, k)
        count = pred_count = 0
        tail = tail_all = None
        if degs is not None:
            count = sum(1 for w, _ in degs if w[-1] in g.V1 and ell(w, g) == k)
            tail = Fraction(sum(1 for w, d in degs if w[-1] in g.V1 and d > t), total)
            tail_all = Fraction(sum(1 for _, d in degs if d > t), total)
        if k >= 1:
            pred_count = N ** (n - k - 1) * g.n2 * g.n1**k
        rows.append(
            DegreeLawRow(k, t, Fraction(g.n1, N) ** (k + 1), count, pred_count, tail, tail_all)
        )
    return DegreeLawReport(n, d1, rep.d2, gamma_tilde, tuple(rows))


def prefix_stripping_check(v: HierGraphView) -> bool:
    """Each first-digit block induces a copy of the level n-1 graph."""
    if v.n < 2:
        return True
    lower = HierGraphView(v.base, v.n - 1, v.variant, v.max_pairs)
    v.guard()
    N = v.base.N
    words = list(lower.words())
    for a in range(N):
        for x in words:
            for y in words:
                if v.is_edge((a,) + x, (a,) + y) != lower.is_edge(x, y):
                    return False
    return True


def word_at(v: HierGraphView, idx: int) -> Word:
    return index_word(idx, v.base.N, v.n)
