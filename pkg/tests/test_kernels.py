from __future__ import annotations

import os
import subprocess
import sys

import numpy as np
import pytest

from fractalgraphs import _pykernels, kernels
from fractalgraphs.hiergraph import HierGraphView
from fractalgraphs.symbolic import VARIANTS

try:
    from fractalgraphs import _ckernels
except ImportError:  # pragma: no cover - extension not built
    _ckernels = None

needs_ext = pytest.mark.skipif(_ckernels is None, reason="compiled extension not built")


@needs_ext
@pytest.mark.parametrize("variant", VARIANTS)
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_edge_matrix_backends_agree(cherry, k22, star, variant, n):
    for g in (cherry, k22, star):
        a = kernels.edge_matrix(g, n, variant, impl=_pykernels)
        b = kernels.edge_matrix(g, n, variant, impl=_ckernels)
        assert np.array_equal(a, b)


@needs_ext
def test_bfs_backends_agree(cherry, star):
    for g in (cherry, star):
        indptr, indices = HierGraphView(g, 4).csr()
        for s in (0, 5, len(indptr) - 2):
            assert np.array_equal(
                kernels.bfs_row(indptr, indices, s, impl=_pykernels),
                kernels.bfs_row(indptr, indices, s, impl=_ckernels),
            )
        assert kernels.bfs_stats(indptr, indices, impl=_pykernels) == kernels.bfs_stats(indptr, indices, impl=_ckernels)


def test_bfs_stats_independent_of_threads(cherry):
    indptr, indices = HierGraphView(cherry, 4).csr()
    ref = kernels.bfs_stats(indptr, indices, 1)
    for t in (2, 3, 7):
        assert kernels.bfs_stats(indptr, indices, t) == ref


def test_bfs_unreachable():
    indptr = np.array([0, 1, 2, 2], dtype=np.int32)
    indices = np.array([1, 0], dtype=np.int32)
    for impl in filter(None, (_pykernels, _ckernels)):
        assert list(kernels.bfs_row(indptr, indices, 0, impl=impl)) == [0, 1, -1]
        assert kernels.bfs_stats(indptr, indices, impl=impl)[2] == 4


def test_backend_name():
    assert kernels.BACKEND in ("cython", "python")


def test_pure_env_forces_fallback():
    env = dict(os.environ, FRACTALGRAPHS_PURE="1")
    out = subprocess.run(
        [sys.executable, "-c", "from fractalgraphs import kernels; print(kernels.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"
