from __future__ import annotations

import io
import math
from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from fractalgraphs.base_graph import BaseGraph
from fractalgraphs.hiergraph import (
    HierGraphView,
    SizeGuardError,
    degree_law,
    degree_scale,
    prefix_stripping_check,
    word_at,
)
from fractalgraphs.symbolic import VARIANTS, degree_formula


def brute_edge(g, x, y, variant):
    """Edge rule applied literally, independent of the view's code path."""
    if x == y:
        return variant == "looped"
    k = 0
    while x[k] == y[k]:
        k += 1
    xt, yt = x[k:], y[k:]
    if variant == "clustered" and len(xt) == 1 and g.has_re(xt[0], yt[0]):
        return True
    for a, b in zip(xt, yt):
        if not g.has_edge(a, b):
            return False
    tx = {g.types[a] for a in xt}
    ty = {g.types[b] for b in yt}
    return len(tx) == 1 and len(ty) == 1


@pytest.mark.parametrize("n, variant, expected", [
    (1, "looped", (3, 2)),
    (2, "looped", (9, 10)),
    (2, "simple", (0, 10)),
    (2, "clustered", (0, 13)),
])
def test_count_edges_cherry(cherry, n, variant, expected):
    assert HierGraphView(cherry, n, variant).count_edges() == expected


@pytest.mark.parametrize("variant", VARIANTS)
@pytest.mark.parametrize("n", [1, 2, 3])
def test_neighbors_match_pairwise_rule(cherry, k22, star, variant, n):
    for g in (cherry, k22, star):
        v = HierGraphView(g, n, variant)
        ws = list(v.words())
        for x in ws:
            expected = [y for y in ws if brute_edge(g, x, y, variant)]
            assert v.neighbors(x) == expected
            assert all(v.is_edge(x, y) == brute_edge(g, x, y, variant) for y in ws)


@pytest.mark.parametrize("variant", VARIANTS)
def test_adjacency_matrix_symmetric_and_matches_rule(cherry, variant):
    v = HierGraphView(cherry, 3, variant)
    a = v.adjacency_matrix()
    assert (a == a.T).all()
    ws = list(v.words())
    for i, x in enumerate(ws):
        for j, y in enumerate(ws):
            assert bool(a[i, j]) == brute_edge(cherry, x, y, variant)


def test_degree_via_enumeration(cherry):
    v = HierGraphView(cherry, 2)
    assert v.degree((1, 1)) == 8
    assert v.degree((0, 0)) == 4
    for x in v.words():
        assert v.degree(x) == degree_formula(x, cherry, "looped")


def test_loop_counts_twice(cherry):
    # sum of degrees = 2 * (edges + loops)
    v = HierGraphView(cherry, 3)
    loops, edges = v.count_edges()
    assert sum(v.degree(x) for x in v.words()) == 2 * (loops + edges)


def test_invalid_views(cherry):
    with pytest.raises(ValueError):
        HierGraphView(cherry, 0)
    with pytest.raises(ValueError):
        HierGraphView(cherry, 2, "directed")
    with pytest.raises(ValueError):
        HierGraphView(cherry, 2).is_edge((0,), (0, 1))


def test_size_guard_names_flag(cherry):
    v = HierGraphView(cherry, 3, max_pairs=100)
    with pytest.raises(SizeGuardError, match="--max-pairs"):
        v.count_edges()


def test_export_edge_list(cherry):
    buf = io.BytesIO()
    assert HierGraphView(cherry, 2).export_edges(buf) == 19
    lines = buf.getvalue().decode().splitlines()
    assert lines[0] == "00 00"
    assert "00 11" in lines and "01 10" not in lines
    buf = io.BytesIO()
    assert HierGraphView(cherry, 2, "simple").export_edges(buf) == 10


def test_export_dot(cherry):
    buf = io.BytesIO()
    assert HierGraphView(cherry, 1, "simple").export_edges(buf, "dot") == 2
    text = buf.getvalue().decode()
    assert text.startswith("graph G {") and '"0" -- "1";' in text


def test_iter_edges_csr_consistent(cherry):
    v = HierGraphView(cherry, 3)
    indptr, indices = v.csr()
    loops, edges = v.count_edges()
    assert len(indices) == 2 * edges
    assert sum(1 for x, y in v.iter_edges() if x != y) == edges


def test_prefix_stripping(cherry, k22, star):
    for g in (cherry, k22, star):
        for var in VARIANTS:
            assert prefix_stripping_check(HierGraphView(g, 3, var))


def test_degree_scale():
    assert [degree_scale(2, k) for k in range(4)] == [2, 4, 8, 16]
    assert degree_scale(3, 1) == 5


def test_degree_law_cherry(cherry):
    rep = degree_law(HierGraphView(cherry, 4))
    assert rep.gamma_tilde == pytest.approx(math.log(3) / math.log(2), abs=1e-12)
    for row in rep.rows:
        assert row.enumerated_tail == Fraction(1, 3) ** (row.ell + 1)
        if row.ell >= 1:
            assert row.class_count == row.predicted_class_count
    d = rep.as_dict()
    assert d["rows"][1]["predicted_tail"] == "1/9"


def test_degree_law_star(star):
    # d1 = 3, n1/N = 1/4
    rep = degree_law(HierGraphView(star, 3))
    assert rep.gamma_tilde == pytest.approx(math.log(4) / math.log(3))
    for row in rep.rows:
        assert row.enumerated_tail == row.predicted_tail


def test_degree_law_requires_a1(k22):
    with pytest.raises(ValueError, match="regularity"):
        degree_law(HierGraphView(k22, 2))


def test_degree_law_needs_d1_at_least_two():
    g = BaseGraph(2, {0}, {1}, {(0, 1)})
    with pytest.raises(ValueError):
        degree_law(HierGraphView(g, 2))


def test_word_at(cherry):
    v = HierGraphView(cherry, 3)
    assert [word_at(v, i) for i in range(27)] == list(product(range(3), repeat=3))


def test_unrestricted_tail_differs_at_low_scale(cherry):
    # V2-ending words reach degree 4 at low ell, so the unrestricted count is larger
    rep = degree_law(HierGraphView(cherry, 4))
    row = rep.rows[1]
    assert row.enumerated_tail_all > row.predicted_tail
    assert rep.rows[3].enumerated_tail_all == rep.rows[3].predicted_tail


def test_edge_matrix_dtype(cherry):
    a = HierGraphView(cherry, 2).adjacency_matrix()
    assert a.dtype == np.uint8 and a.shape == (9, 9)
