from __future__ import annotations

from fractions import Fraction

import pytest

from fractalgraphs.clustering import (
    TriangleCounts,
    average_clustering,
    brute_local_clustering,
    brute_triangle_counts,
    classify_triangle,
    clustering_bounds,
    clustering_envelope,
    local_clustering,
    triangle_counts,
)
from fractalgraphs.hiergraph import HierGraphView
from fractalgraphs.symbolic import ell


def test_local_values_n2(cherry):
    v = HierGraphView(cherry, 2, "clustered")
    assert local_clustering(v, (1, 1)) == Fraction(1, 5)
    assert local_clustering(v, (0, 0)) == Fraction(2, 3)
    for w in v.words():
        assert local_clustering(v, w) == brute_local_clustering(v, w)
        if ell(w, cherry) == 1:
            assert local_clustering(v, w) == 1


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_triangle_closed_forms(cherry, k22, star, n):
    for g in (cherry, k22, star):
        v = HierGraphView(g, n, "clustered")
        for w in v.words():
            assert triangle_counts(v, w) == brute_triangle_counts(v, w)
            assert local_clustering(v, w) == brute_local_clustering(v, w)


def test_monotone_in_level(cherry, star):
    for g in (cherry, star):
        base = HierGraphView(g, 1, "clustered")
        for n in (2, 3, 4):
            v = HierGraphView(g, n, "clustered")
            for w in v.words():
                assert local_clustering(v, w) <= local_clustering(base, w[-1:])


def test_average_cherry(cherry):
    rep = average_clustering(HierGraphView(cherry, 2, "clustered"))
    assert rep.mean == Fraction(103, 135)
    assert (rep.lower, rep.upper) == (Fraction(4, 9), Fraction(1))
    assert rep.lower <= rep.mean <= rep.upper
    assert rep.envelope == (1.2, 2.0)
    d = rep.as_dict()
    assert d["mean_C_exact"] == "103/135"
    assert sum(b[2] for b in d["per_degree_bucket"]) == 9


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_average_within_bounds(cherry, star, n):
    for g in (cherry, star):
        rep = average_clustering(HierGraphView(g, n, "clustered"))
        assert rep.lower <= rep.mean <= rep.upper


def test_envelope_is_bounded(cherry):
    # C_x deg(x) stays bounded as the level grows
    for n in (3, 4, 5, 6):
        v = HierGraphView(cherry, n, "clustered")
        ws = [w for w in v.words() if ell(w, cherry) >= 2]
        lo, hi = clustering_envelope(v, ws)
        assert 1 <= lo <= hi <= 2


def test_sampled_mode(cherry):
    v = HierGraphView(cherry, 5, "clustered")
    a = average_clustering(v, "sampled", 400, seed=2)
    b = average_clustering(v, "sampled", 400, seed=2)
    assert a.mean == b.mean
    exact = average_clustering(v).mean
    assert abs(a.mean - float(exact)) < 0.1


def test_classify(cherry):
    v = HierGraphView(cherry, 2, "clustered")
    # (0,0)-(0,1)-(0,2): RE edge between (0,0) and (0,2)
    assert classify_triangle(v, (0, 1), (0, 0), (0, 2)) == "regular1"
    assert classify_triangle(v, (0, 0), (0, 1), (0, 2)) == "regular2"
    with pytest.raises(ValueError):
        classify_triangle(v, (0, 0), (1, 1), (2, 2))


def test_requires_clustered_and_property_r(cherry, data_dir):
    with pytest.raises(ValueError):
        triangle_counts(HierGraphView(cherry, 2), (0, 0))
    from fractalgraphs.base_graph import BaseGraph

    g = BaseGraph(4, {0, 1}, {2, 3}, {(0, 2), (0, 3), (1, 2), (1, 3)})
    with pytest.raises(ValueError, match="Property R"):
        average_clustering(HierGraphView(g, 2, "clustered"))


def test_bounds_star(star):
    lo, hi = clustering_bounds(star)
    assert lo <= hi
    assert TriangleCounts(1, 2, 3).total == 6
