from __future__ import annotations

import math
from itertools import permutations

import numpy as np
import pytest

from fractalgraphs.fractal import (
    FractalBitmap,
    box_count_lambda12,
    build_ifs_graph,
    digit_permutation_index,
    enumerate_paths,
    hausdorff_dims,
    lambda_bitmap,
    nesting_check,
    path_shape_ok,
    path_square,
    permuted_bitmap,
    rasterize_paths,
    read_pbm,
    vertex_class,
)
from fractalgraphs.hiergraph import HierGraphView, SizeGuardError


def test_ifs_graph_cherry(cherry):
    ifs = build_ifs_graph(cherry)
    assert ifs.classes["12"] == ((1, 0), (1, 2))
    assert ifs.classes["21"] == ((0, 1), (2, 1))
    assert len(ifs.vertices) == 7
    assert ifs.num_edges == 3 * 7 + 2 * 2 + 2 * 2
    assert vertex_class((1, 1), cherry) == "dd"
    f = ifs.homothety((1, 0))
    assert f(0.0, 0.0) == (1 / 3, 0.0)


@pytest.mark.parametrize("n, count", [(1, 7), (2, 29)])
def test_path_counts(cherry, n, count):
    assert len(enumerate_paths(build_ifs_graph(cherry), n)) == count


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_paths_equal_edges(cherry, k22, n):
    for g in (cherry, k22):
        ifs = build_ifs_graph(g)
        paths = enumerate_paths(ifs, n)
        squares = {path_square(p) for p in paths}
        assert len(squares) == len(paths)  # injective
        bm = lambda_bitmap(g, n)
        assert bm.count() == len(paths)
        assert np.array_equal(rasterize_paths(ifs, n).bits, bm.bits)
        assert all(path_shape_ok(p, g) for p in paths)


def test_path_shape_rejects_mixed(cherry):
    assert path_shape_ok(((0, 0), (1, 0), (1, 0)), cherry)
    assert not path_shape_ok(((1, 0), (0, 0)), cherry)
    assert not path_shape_ok(((1, 0), (0, 1)), cherry)


def test_enumerate_paths_guard(cherry):
    with pytest.raises(SizeGuardError):
        enumerate_paths(build_ifs_graph(cherry), 6, max_paths=100)


def test_bitmap_counts(cherry):
    assert lambda_bitmap(cherry, 2).count() == 29
    assert lambda_bitmap(cherry, 2, "simple").count() == 20
    with pytest.raises(ValueError):
        lambda_bitmap(cherry, 2, "clustered")


def test_raster_orientation(cherry):
    bm = lambda_bitmap(cherry, 1, "simple")
    # edge (0, 1): column 0, y index 1 -> row side-1-1 = 1
    r = bm.raster()
    assert r[1, 0] == 1 and r[2, 0] == 0
    assert r[0, 1] == 1 and r[2, 1] == 1  # y = 2 and y = 0 in column 1


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_symmetry(cherry, k22, n):
    for g in (cherry, k22):
        bm = lambda_bitmap(g, n)
        assert bm.is_symmetric()
        r = bm.raster()
        assert np.array_equal(r, r[::-1, ::-1].T)  # anti-transpose in image space


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_nesting(cherry, k22, n):
    assert nesting_check(cherry, n)
    assert nesting_check(k22, n)


def test_box_count_and_dimension(cherry):
    counts = [box_count_lambda12(cherry, n) for n in range(1, 6)]
    assert counts == [2**n for n in range(1, 6)]
    xs = np.array([n * math.log(3) for n in range(1, 6)])
    ys = np.log(counts)
    slope = np.polyfit(xs, ys, 1)[0]
    assert abs(slope - hausdorff_dims(cherry)[1]) < 1e-12
    assert hausdorff_dims(cherry) == (1.0, math.log(2) / math.log(3))


@pytest.mark.parametrize("perm", list(permutations(range(3))))
def test_permutation_relation(cherry, perm):
    n = 3
    a = lambda_bitmap(cherry, n).bits
    b = permuted_bitmap(cherry, n, perm).bits
    idx = digit_permutation_index(perm, 3, n)
    assert np.array_equal(b, a[np.ix_(idx, idx)])
    assert b.sum() == a.sum()


def test_pbm_round_trip(cherry):
    bm = lambda_bitmap(cherry, 2)
    data = bm.to_pbm("base x\nsecond line")
    assert data.startswith(b"P1\n# base x\n# second line\n9 9\n")
    assert np.array_equal(read_pbm(data), bm.raster())
    with pytest.raises(ValueError):
        read_pbm(b"P1\n2 2\n0 1 1\n")


def test_side_guard(cherry):
    with pytest.raises(SizeGuardError, match="--max-side"):
        lambda_bitmap(cherry, 3, max_side=10)


def test_bitmap_matches_view(cherry):
    v = HierGraphView(cherry, 3, "simple")
    bm = lambda_bitmap(cherry, 3, "simple")
    assert isinstance(bm, FractalBitmap) and bm.side == 27
    assert np.array_equal(bm.bits, v.adjacency_matrix())
