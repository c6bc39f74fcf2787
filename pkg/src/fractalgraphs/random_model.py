"""The randomized graph: balls thrown into the urns of the looped level-n graph.

Ball i lands in the urn named by the first n base-N digits of a uniform point.
Two balls are adjacent iff their urns are adjacent in the looped graph, so
balls sharing an urn are always adjacent.

The number of urns adjacent to urn x (its own included) is
``m(x) = S(x) * deg(x_n) + 1``. For a V1-ending word with ell = k under the
regularity assumption that is ``(d1^(k+1) - 1)/(d1 - 1)``, one less than the
looped degree scale ``t_k``; predictions below use ``m_k`` and reports carry
both.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import stats

from .base_graph import BaseGraph, check_regularity_a1
from .hiergraph import HierGraphView, degree_scale
from .symbolic import ell, s_value

GENERATOR_ID = "numpy.PCG64"
# P(|Z| > 4.5) ~ 6.8e-6 < e^-10
WINDOW_K = 4.5


@dataclass(frozen=True)
class RandomSample:
    base: BaseGraph
    n: int
    M: int
    seed: int
    codes: np.ndarray  # (M + 1, n) digits

    @property
    def c_n(self) -> float:
        return self.M / self.base.N**self.n

    @property
    def num_balls(self) -> int:
        return self.M + 1

    def urns(self) -> np.ndarray:
        weights = self.base.N ** np.arange(self.n - 1, -1, -1)
        return self.codes @ weights

    def manifest(self) -> dict:
        return {
            "base_hash": self.base.digest,
            "n": self.n,
            "M": self.M,
            "balls": self.num_balls,
            "c_n": self.c_n,
            "seed": self.seed,
            "generator_id": GENERATOR_ID,
        }


def sample_codes(g: BaseGraph, n: int, M: int, seed: int) -> RandomSample:
    if M < 1:
        raise ValueError("M must be >= 1")
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    codes = rng.integers(0, g.N, size=(M + 1, n), dtype=np.int64)
    return RandomSample(g, n, M, seed, codes)


def urn_neighborhood_sizes(g: BaseGraph, n: int) -> np.ndarray:
    """m(x) = S(x) deg(x_n) + 1 for every urn, by word index."""
    v = HierGraphView(g, n)
    return np.array([s_value(w, g) * g.deg[w[-1]] + 1 for w in v.words()], dtype=np.int64)


@dataclass
class RandomGraph:
    sample: RandomSample
    urn_of: np.ndarray
    urn_counts: np.ndarray
    degrees: np.ndarray

    @property
    def num_vertices(self) -> int:
        return len(self.urn_of)

    def edges(self):
        """Edges (i, j), i < j, in increasing order."""
        s = self.sample
        v = HierGraphView(s.base, s.n)
        N = s.base.N
        members: dict[int, list[int]] = {}
        for i, u in enumerate(self.urn_of.tolist()):
            members.setdefault(u, []).append(i)
        weights = N ** np.arange(s.n - 1, -1, -1)
        for i in range(self.num_vertices):
            nb_urns = [int(np.dot(w, weights)) for w in v.neighbors(tuple(s.codes[i].tolist()))]
            js = sorted(j for u in nb_urns for j in members.get(u, ()) if j > i)
            for j in js:
                yield i, j


def build_random_graph(s: RandomSample) -> RandomGraph:
    g, n = s.base, s.n
    v = HierGraphView(g, n)
    urn_of = s.urns()
    counts = np.bincount(urn_of, minlength=g.N**n)
    N = g.N
    weights = N ** np.arange(n - 1, -1, -1)
    closed = np.empty(N**n, dtype=np.int64)
    for idx, w in enumerate(v.words()):
        closed[idx] = sum(counts[int(np.dot(y, weights))] for y in v.neighbors(w))
    degrees = closed[urn_of] - 1
    return RandomGraph(s, urn_of, counts, degrees)


def isolated_stats(rg: RandomGraph) -> tuple[float, float]:
    """(fraction of balls with no other adjacent ball, bound exp(-d_min c_n))."""
    frac = float(np.mean(rg.degrees == 0))
    return frac, math.exp(-rg.sample.base.d_min * rg.sample.c_n)


def favorable_urns(d1: int, k: int) -> int:
    return (d1 ** (k + 1) - 1) // (d1 - 1)


def class_mass(g: BaseGraph, k: int) -> float:
    """Probability that a uniform word ends in V1 with ell exactly k (k < n)."""
    return (g.n1 / g.N) ** k * g.n2 / g.N


def k0(g: BaseGraph, n: int) -> float:
    rep = check_regularity_a1(g)
    ld1 = math.log(rep.d1)
    ld2 = math.log(rep.d2) if rep.d2 > 0 else 0.0
    return max((n + 1) * ld2 / ld1, math.log(n) / ld1)


def _a1(g):
    rep = check_regularity_a1(g)
    if not rep.holds or rep.d1 < 2:
        raise ValueError("regularity assumption does not hold")
    return rep.d1


def window(g: BaseGraph, n: int, c_n: float, k: int) -> tuple[float, float]:
    m = favorable_urns(_a1(g), k)
    c = c_n * m
    return c - WINDOW_K * math.sqrt(c), c + WINDOW_K * math.sqrt(c)


def _z(g, n, c_n, k, u):
    """Standardized u and the binomial standard deviation for class k."""
    m = favorable_urns(_a1(g), k)
    c = c_n * m
    sd = math.sqrt(c * (1 - m / g.N**n))
    return (u - c) / sd, sd


def theoretical_degree_mass(g: BaseGraph, n: int, c_n: float, k: int, u: float) -> float:
    if k <= k0(g, n):
        raise ValueError(f"k={k} is not above k0={k0(g, n):.3f}")
    lo, hi = window(g, n, c_n, k)
    if not lo <= u <= hi:
        raise ValueError(f"u={u} outside [{lo:.3f}, {hi:.3f}]")
    # normalized by the same binomial sd as z, so the window integrates to p_k
    z, sd = _z(g, n, c_n, k, u)
    return class_mass(g, k) * stats.norm.pdf(z) / sd


def window_index(g: BaseGraph, n: int, c_n: float, u: float) -> int:
    """The admissible k (k0 < k < n) whose window holds u, closest center first."""
    cands = []
    for k in range(1, n):
        if k <= k0(g, n):
            continue
        lo, hi = window(g, n, c_n, k)
        if lo <= u <= hi:
            z, _ = _z(g, n, c_n, k, u)
            cands.append((abs(z), k))
    if not cands:
        raise ValueError(f"u={u} lies in no admissible window")
    return min(cands)[1]


def tail_probability(g: BaseGraph, n: int, c_n: float, u: float, k: int | None = None) -> float:
    """P(deg > u) without the error term."""
    k = window_index(g, n, c_n, u) if k is None else k
    z, _ = _z(g, n, c_n, k, u)
    q = g.n1 / g.N
    return q ** (k + 1) + q**k * (g.n2 / g.N) * stats.norm.sf(z)


def powerlaw_envelope(g: BaseGraph) -> tuple[float, float, float]:
    """(gamma - 1, lower, upper) envelope for u^(gamma-1) P(deg > u)."""
    d1 = _a1(g)
    return math.log(g.N / g.n1) / math.log(d1), g.n1 / g.N, g.N / g.n1


def empirical_l(degrees: np.ndarray, u: float, gamma_minus_1: float) -> float:
    return u**gamma_minus_1 * float(np.mean(degrees > u))


def code_classes(s: RandomSample) -> np.ndarray:
    """ell of each ball's code when it ends in V1, else 0."""
    g = s.base
    out = np.zeros(s.num_balls, dtype=np.int64)
    for i, code in enumerate(s.codes.tolist()):
        if code[-1] in g.V1:
            out[i] = ell(tuple(code), g)
    return out


def degree_histogram(rg: RandomGraph) -> list[tuple[int, int]]:
    vals, counts = np.unique(rg.degrees, return_counts=True)
    return [(int(a), int(b)) for a, b in zip(vals, counts)]


def scales(g: BaseGraph, n: int) -> list[dict]:
    d1 = _a1(g)
    return [
        {"k": k, "t_k": degree_scale(d1, k), "m_k": favorable_urns(d1, k), "p_k": class_mass(g, k)}
        for k in range(1, n)
    ]
