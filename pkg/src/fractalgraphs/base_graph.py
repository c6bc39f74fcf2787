"""Bipartite base graphs and their clustering extensions.

A base graph file is line oriented::

    # comment
    N 3
    V1 1
    V2 0 2
    E 0-1 1-2
    RE 0-2

``RE`` is optional. Edges are unordered; the canonical serialization sorts
every set so that parse/serialize round-trips are byte stable.
"""

from __future__ import annotations

import hashlib
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

Edge = tuple[int, int]


class BaseGraphError(ValueError):
    """Raised for malformed or invalid base-graph descriptions."""


def _norm(a: int, b: int) -> Edge:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class RegularityReport:
    d1: int | None
    d2: int
    holds: bool


@dataclass(frozen=True)
class TriangleCensus:
    """Per-vertex triangle classes and local clustering of the extended base graph."""

    delta1: tuple[int, ...]
    delta2: tuple[int, ...]
    delta_ir: tuple[int, ...]
    local: tuple[float, ...]

    @property
    def c_min(self) -> float:
        return min(self.local)

    @property
    def c_mean(self) -> float:
        return sum(self.local) / len(self.local)

    def regular(self, x: int) -> int:
        return self.delta1[x] + self.delta2[x]


@dataclass(frozen=True)
class BaseGraph:
    N: int
    V1: frozenset[int]
    V2: frozenset[int]
    E: frozenset[Edge]
    RE: frozenset[Edge] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "V1", frozenset(self.V1))
        object.__setattr__(self, "V2", frozenset(self.V2))
        object.__setattr__(self, "E", frozenset(_norm(*e) for e in self.E))
        object.__setattr__(self, "RE", frozenset(_norm(*e) for e in self.RE))
        self._validate()

    def _validate(self):
        if self.N < 2:
            raise BaseGraphError(f"need N >= 2, got {self.N}")
        if not self.V1 or not self.V2:
            raise BaseGraphError("V1 and V2 must both be non-empty")
        if self.V1 & self.V2:
            raise BaseGraphError(f"V1 and V2 overlap on {sorted(self.V1 & self.V2)}")
        if self.V1 | self.V2 != set(range(self.N)):
            raise BaseGraphError(f"V1 and V2 must partition 0..{self.N - 1}")
        for a, b in self.E | self.RE:
            if a == b:
                raise BaseGraphError(f"loop {a}-{b} not allowed")
            if not (0 <= a < self.N and 0 <= b < self.N):
                raise BaseGraphError(f"edge {a}-{b} out of range")
        for a, b in self.E:
            if (a in self.V1) == (b in self.V1):
                raise BaseGraphError(f"edge {a}-{b} lies inside one side")
        if self.E & self.RE:
            raise BaseGraphError(f"RE overlaps E on {sorted(self.E & self.RE)}")

    @property
    def n1(self) -> int:
        return len(self.V1)

    @property
    def n2(self) -> int:
        return len(self.V2)

    @cached_property
    def types(self) -> tuple[int, ...]:
        """Type (1 or 2) of each base vertex."""
        return tuple(1 if x in self.V1 else 2 for x in range(self.N))

    @cached_property
    def adj(self) -> tuple[tuple[int, ...], ...]:
        """Sorted G-neighbors of each vertex."""
        return _adjacency(self.N, self.E)

    @cached_property
    def adj_hat(self) -> tuple[tuple[int, ...], ...]:
        return _adjacency(self.N, self.E | self.RE)

    @cached_property
    def re_adj(self) -> tuple[tuple[int, ...], ...]:
        return _adjacency(self.N, self.RE)

    @cached_property
    def deg(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adj)

    @cached_property
    def deg_hat(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adj_hat)

    @property
    def d_min(self) -> int:
        return min(self.deg)

    def has_edge(self, a: int, b: int) -> bool:
        return _norm(a, b) in self.E

    def has_re(self, a: int, b: int) -> bool:
        return _norm(a, b) in self.RE

    @cached_property
    def distances(self) -> tuple[tuple[int | None, ...], ...]:
        """All-pairs graph distances in G (None when unreachable)."""
        rows = []
        for s in range(self.N):
            dist: list[int | None] = [None] * self.N
            dist[s] = 0
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self.adj[u]:
                    if dist[w] is None:
                        dist[w] = dist[u] + 1
                        queue.append(w)
            rows.append(tuple(dist))
        return tuple(rows)

    @property
    def diam(self) -> int:
        """Largest finite distance in G."""
        return max(d for row in self.distances for d in row if d is not None)

    @property
    def connected(self) -> bool:
        return all(d is not None for d in self.distances[0])

    def relabel(self, perm) -> BaseGraph:
        """Return the base graph with vertex ``v`` renamed to ``perm[v]``."""
        perm = tuple(perm)
        if sorted(perm) != list(range(self.N)):
            raise BaseGraphError(f"{perm} is not a permutation of 0..{self.N - 1}")
        return BaseGraph(
            self.N,
            frozenset(perm[v] for v in self.V1),
            frozenset(perm[v] for v in self.V2),
            frozenset((perm[a], perm[b]) for a, b in self.E),
            frozenset((perm[a], perm[b]) for a, b in self.RE),
        )

    def serialize(self) -> str:
        def edges(es):
            return " ".join(f"{a}-{b}" for a, b in sorted(es))

        lines = [
            f"N {self.N}",
            "V1 " + " ".join(map(str, sorted(self.V1))),
            "V2 " + " ".join(map(str, sorted(self.V2))),
            ("E " + edges(self.E)).rstrip(),
            ("RE " + edges(self.RE)).rstrip(),
        ]
        return "\n".join(lines) + "\n"

    @cached_property
    def digest(self) -> str:
        return hashlib.sha256(self.serialize().encode()).hexdigest()[:16]


def _adjacency(N, edges):
    nbrs: list[list[int]] = [[] for _ in range(N)]
    for a, b in edges:
        nbrs[a].append(b)
        nbrs[b].append(a)
    return tuple(tuple(sorted(x)) for x in nbrs)


def _parse_edge(token: str, lineno: int) -> Edge:
    parts = token.split("-")
    if len(parts) != 2:
        raise BaseGraphError(f"line {lineno}: bad edge token {token!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise BaseGraphError(f"line {lineno}: bad edge token {token!r}") from None


def parse_base_graph(text: str) -> BaseGraph:
    """Parse a base-graph description.

    Raises:
        BaseGraphError: on malformed lines, out-of-range labels, edges inside
            one side, duplicate edges, or RE edges that repeat an E edge.
    """
    records: dict[str, list[str]] = {}
    order = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, *tokens = line.split()
        if key not in ("N", "V1", "V2", "E", "RE"):
            raise BaseGraphError(f"line {lineno}: unknown record {key!r}")
        if key in records:
            raise BaseGraphError(f"line {lineno}: duplicate record {key!r}")
        records[key] = tokens
        order.append((key, lineno))

    for key in ("N", "V1", "V2", "E"):
        if key not in records:
            raise BaseGraphError(f"missing record {key!r}")
    expected = ["N", "V1", "V2", "E", "RE"][: len(order)]
    if [k for k, _ in order] != expected:
        raise BaseGraphError("records must appear in the order N, V1, V2, E, RE")

    linenos = dict(order)
    if len(records["N"]) != 1:
        raise BaseGraphError(f"line {linenos['N']}: N takes exactly one integer")
    try:
        N = int(records["N"][0])
        V1 = [int(t) for t in records["V1"]]
        V2 = [int(t) for t in records["V2"]]
    except ValueError as exc:
        raise BaseGraphError(f"non-integer vertex label: {exc}") from None
    for name, vs in (("V1", V1), ("V2", V2)):
        if len(set(vs)) != len(vs):
            raise BaseGraphError(f"line {linenos[name]}: repeated label in {name}")
        for v in vs:
            if not 0 <= v < N:
                raise BaseGraphError(f"line {linenos[name]}: vertex {v} out of range")

    edge_sets = {}
    for key in ("E", "RE"):
        seen: set[Edge] = set()
        for tok in records.get(key, []):
            a, b = _parse_edge(tok, linenos[key])
            for v in (a, b):
                if not 0 <= v < N:
                    raise BaseGraphError(f"line {linenos[key]}: vertex {v} out of range")
            e = _norm(a, b)
            if e in seen:
                raise BaseGraphError(f"line {linenos[key]}: duplicate edge {tok}")
            seen.add(e)
        edge_sets[key] = frozenset(seen)

    return BaseGraph(N, frozenset(V1), frozenset(V2), edge_sets["E"], edge_sets["RE"])


def load_base_graph(path) -> BaseGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_base_graph(fh.read())


def check_regularity_a1(g: BaseGraph) -> RegularityReport:
    """Check the regularity assumption: constant V1 degree d1 and max V2 degree below it."""
    v1_degs = {g.deg[x] for x in g.V1}
    d1 = v1_degs.pop() if len(v1_degs) == 1 else None
    d2 = max(g.deg[y] for y in g.V2)
    return RegularityReport(d1, d2, d1 is not None and d2 <= d1 - 1)


def _triangles(g: BaseGraph):
    adj = [set(a) for a in g.adj_hat]
    for x, y, z in combinations(range(g.N), 3):
        if y in adj[x] and z in adj[x] and z in adj[y]:
            yield x, y, z


def check_property_r(g: BaseGraph) -> bool:
    """True iff every vertex lies on a triangle with two E-edges and one RE-edge."""
    covered = set()
    for tri in _triangles(g):
        pairs = [(tri[0], tri[1]), (tri[0], tri[2]), (tri[1], tri[2])]
        if sum(g.has_edge(*p) for p in pairs) == 2 and sum(g.has_re(*p) for p in pairs) == 1:
            covered.update(tri)
    return len(covered) == g.N


def base_triangle_census(g: BaseGraph) -> TriangleCensus:
    d1 = [0] * g.N
    d2 = [0] * g.N
    dir_ = [0] * g.N
    for tri in _triangles(g):
        pairs = [(tri[0], tri[1]), (tri[0], tri[2]), (tri[1], tri[2])]
        re_pairs = [p for p in pairs if g.has_re(*p)]
        regular = sum(g.has_edge(*p) for p in pairs) == 2
        for v in tri:
            if not regular:
                dir_[v] += 1
            elif v in re_pairs[0]:
                d2[v] += 1
            else:
                d1[v] += 1
    local = []
    for x in range(g.N):
        k = g.deg_hat[x]
        t = d1[x] + d2[x] + dir_[x]
        local.append(2.0 * t / (k * (k - 1)) if k >= 2 else 0.0)
    return TriangleCensus(tuple(d1), tuple(d2), tuple(dir_), tuple(local))


CHERRY = BaseGraph(3, frozenset({1}), frozenset({0, 2}), frozenset({(0, 1), (1, 2)}), frozenset({(0, 2)}))
