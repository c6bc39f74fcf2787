"""Triangles and local clustering in the clustered graph: closed forms and brute force."""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .base_graph import BaseGraph, base_triangle_census, check_property_r
from .hiergraph import HierGraphView
from .symbolic import Word, degree_formula, ell, s_value, split_common_prefix


@dataclass(frozen=True)
class TriangleCounts:
    delta1: int
    delta2: int
    delta_ir: int

    @property
    def total(self) -> int:
        return self.delta1 + self.delta2 + self.delta_ir


def _require_clustered(v: HierGraphView):
    if v.variant != "clustered":
        raise ValueError("clustering needs the clustered variant")


def _is_re_edge(v: HierGraphView, a: Word, b: Word) -> bool:
    k, at, bt = split_common_prefix(a, b)
    return k == v.n - 1 and v.base.has_re(at[0], bt[0])


def classify_triangle(v: HierGraphView, x: Word, y: Word, z: Word) -> str:
    """'regular1', 'regular2' or 'irregular', relative to the distinguished vertex x."""
    _require_clustered(v)
    pairs = [(x, y), (x, z), (y, z)]
    if len({x, y, z}) < 3 or not all(v.is_edge(a, b) for a, b in pairs):
        raise ValueError("not a triangle")
    re_pairs = [p for p in pairs if _is_re_edge(v, *p)]
    if len(re_pairs) != 1:
        return "irregular"
    return "regular2" if x in re_pairs[0] else "regular1"


def triangle_counts(v: HierGraphView, x: Word) -> TriangleCounts:
    """Closed-form triangle classes: S(x) times the base counts, irregular ones unscaled."""
    _require_clustered(v)
    g = v.base
    census = base_triangle_census(g)
    s = s_value(x, g)
    last = x[-1]
    return TriangleCounts(s * census.delta1[last], s * census.delta2[last], census.delta_ir[last])


def brute_triangle_counts(v: HierGraphView, x: Word) -> TriangleCounts:
    _require_clustered(v)
    nb = [w for w in v.neighbors(x) if w != x]
    counts = {"regular1": 0, "regular2": 0, "irregular": 0}
    for y, z in combinations(nb, 2):
        if v.is_edge(y, z):
            counts[classify_triangle(v, x, y, z)] += 1
    return TriangleCounts(counts["regular1"], counts["regular2"], counts["irregular"])


def local_clustering(v: HierGraphView, x: Word) -> Fraction:
    _require_clustered(v)
    g = v.base
    census = base_triangle_census(g)
    k = degree_formula(x, g, "clustered")
    if k < 2:
        return Fraction(0)
    last = x[-1]
    num = 2 * census.regular(last) * s_value(x, g) + 2 * census.delta_ir[last]
    return Fraction(num, k * (k - 1))


def brute_local_clustering(v: HierGraphView, x: Word) -> Fraction:
    nb = [w for w in v.neighbors(x) if w != x]
    k = len(nb)
    if k < 2:
        return Fraction(0)
    links = sum(1 for y, z in combinations(nb, 2) if v.is_edge(y, z))
    return Fraction(2 * links, k * (k - 1))


def clustering_bounds(g: BaseGraph) -> tuple[Fraction, Fraction]:
    """[2 n1 n2 Cmin / N^2, mean base clustering]."""
    census = base_triangle_census(g)
    c_local = [_base_local(g, census, x) for x in range(g.N)]
    lo = Fraction(2 * g.n1 * g.n2, g.N**2) * min(c_local)
    return lo, sum(c_local, Fraction(0)) / g.N


def _base_local(g, census, x):
    k = g.deg_hat[x]
    if k < 2:
        return Fraction(0)
    t = census.delta1[x] + census.delta2[x] + census.delta_ir[x]
    return Fraction(2 * t, k * (k - 1))


@dataclass
class ClusteringReport:
    n: int
    mean: Fraction | float
    lower: Fraction
    upper: Fraction
    buckets: list
    envelope: tuple[float, float] | None
    mode: str

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "mean_C": float(self.mean),
            "mean_C_exact": str(self.mean) if isinstance(self.mean, Fraction) else None,
            "bounds": [float(self.lower), float(self.upper)],
            "per_degree_bucket": self.buckets,
            "envelope": None if self.envelope is None else list(self.envelope),
            "mode": self.mode,
        }


def average_clustering(v: HierGraphView, mode: str = "exact", samples: int = 10000, seed: int = 0) -> ClusteringReport:
    _require_clustered(v)
    g = v.base
    if not check_property_r(g):
        raise ValueError("Property R does not hold for the base graph")
    lo, hi = clustering_bounds(g)
    if mode == "exact":
        v.guard(v.num_vertices)
        words = list(v.words())
        m = "exact"
    elif mode == "sampled":
        if samples < 1:
            raise ValueError("need at least one sample")
        rng = random.Random(seed)
        words = [tuple(rng.randrange(g.N) for _ in range(v.n)) for _ in range(samples)]
        m = "sampled"
    else:
        raise ValueError(f"unknown mode {mode!r}")
    buckets: dict[int, list] = defaultdict(list)
    total = Fraction(0)
    for w in words:
        c = local_clustering(v, w)
        total += c
        buckets[degree_formula(w, g, "clustered")].append(c)
    mean = total / len(words)
    table = [
        [k, float(sum(cs, Fraction(0)) / len(cs)), len(cs)] for k, cs in sorted(buckets.items())
    ]
    env_words = [w for w in words if ell(w, g) >= 2]
    envelope = clustering_envelope(v, env_words) if env_words else None
    return ClusteringReport(v.n, mean if m == "exact" else float(mean), lo, hi, table, envelope, m)


def clustering_envelope(v: HierGraphView, words) -> tuple[float, float]:
    """(min, max) of C_x * deg(x) over the given words."""
    words = list(words)
    if not words:
        raise ValueError("empty sample")
    vals = [local_clustering(v, w) * degree_formula(w, v.base, "clustered") for w in words]
    return float(min(vals)), float(max(vals))
