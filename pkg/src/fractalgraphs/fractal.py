"""Adjacency embeddings in the unit square and the directed IFS graph behind them.

Pixel convention for rasters: column = index of the x-word, row 0 is the top,
so row r holds the y-word with index ``side - 1 - r``. Internally bitmaps are
kept as adjacency matrices ``bits[ix, iy]``; only :meth:`FractalBitmap.raster`
and the PBM writer flip to image orientation.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from itertools import product

import numpy as np

from . import kernels
from .base_graph import BaseGraph
from .hiergraph import SizeGuardError

DEFAULT_MAX_SIDE = 4096

IFSVertex = tuple[int, int]


def vertex_class(v: IFSVertex, g: BaseGraph) -> str:
    x, y = v
    if x == y:
        return "dd"
    return "12" if x in g.V1 else "21"


@dataclass(frozen=True)
class IFSGraph:
    base: BaseGraph
    vertices: tuple[IFSVertex, ...]
    classes: dict
    successors: dict

    @property
    def num_edges(self) -> int:
        return sum(len(s) for s in self.successors.values())

    def homothety(self, v: IFSVertex):
        """The level-1 similarity (a, b) -> ((a, b) + v) / N."""
        N = self.base.N

        def f(a, b):
            return (a + v[0]) / N, (b + v[1]) / N

        return f


def build_ifs_graph(g: BaseGraph) -> IFSGraph:
    dd = [(z, z) for z in range(g.N)]
    v12 = sorted((a, b) if a in g.V1 else (b, a) for a, b in g.E)
    v21 = sorted((b, a) for a, b in v12)
    classes = {"dd": tuple(dd), "12": tuple(v12), "21": tuple(v21)}
    succ = {}
    for v in dd:
        succ[v] = tuple(dd + v12 + v21)
    for v in v12:
        succ[v] = tuple(v12)
    for v in v21:
        succ[v] = tuple(v21)
    return IFSGraph(g, tuple(dd + v12 + v21), classes, succ)


def enumerate_paths(ifs: IFSGraph, n: int, max_paths: int = 10**6) -> set[tuple[IFSVertex, ...]]:
    """All directed walks with n vertices."""
    paths = [(v,) for v in ifs.vertices]
    for _ in range(1, n):
        paths = [p + (w,) for p in paths for w in ifs.successors[p[-1]]]
        if len(paths) > max_paths:
            raise SizeGuardError(f"more than {max_paths} paths; raise max_paths")
    return set(paths)


_SHAPE = re.compile(r"^(dd)*((12)*|(21)*)$")


def path_shape_ok(path, g: BaseGraph) -> bool:
    return bool(_SHAPE.match("".join(vertex_class(v, g) for v in path)))


def path_square(path) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """The pair of words (x, y) whose square Q_{x,y} a path codes."""
    return tuple(v[0] for v in path), tuple(v[1] for v in path)


@dataclass(frozen=True)
class FractalBitmap:
    N: int
    n: int
    bits: np.ndarray

    @property
    def side(self) -> int:
        return self.N**self.n

    def raster(self) -> np.ndarray:
        return self.bits.T[::-1, :]

    def count(self) -> int:
        return int(self.bits.sum())

    def is_symmetric(self) -> bool:
        return bool((self.bits == self.bits.T).all())

    def to_pbm(self, comment: str = "") -> bytes:
        lines = ["P1"]
        if comment:
            lines.extend("# " + c for c in comment.splitlines())
        lines.append(f"{self.side} {self.side}")
        ras = self.raster()
        lines.extend(" ".join("1" if b else "0" for b in row) for row in ras)
        return ("\n".join(lines) + "\n").encode()


def read_pbm(data: bytes) -> np.ndarray:
    """Parse an ASCII P1 bitmap into a raster array (row 0 on top)."""
    tokens = [t for line in data.decode().splitlines() if not line.startswith("#") for t in line.split()]
    if tokens[0] != "P1":
        raise ValueError("not a P1 bitmap")
    w, h = int(tokens[1]), int(tokens[2])
    pix = np.array([int(t) for t in tokens[3:]], dtype=np.uint8)
    if pix.size != w * h:
        raise ValueError("pixel count does not match header")
    return pix.reshape(h, w)


def _guard_side(N, n, max_side):
    if N**n > max_side:
        raise SizeGuardError(f"side {N**n} exceeds {max_side}; raise it with --max-side")


def lambda_bitmap(g: BaseGraph, n: int, variant: str = "looped", max_side: int = DEFAULT_MAX_SIDE) -> FractalBitmap:
    if variant not in ("looped", "simple"):
        raise ValueError("bitmaps exist for the looped and simple variants")
    _guard_side(g.N, n, max_side)
    return FractalBitmap(g.N, n, kernels.edge_matrix(g, n, variant))


def rasterize_paths(ifs: IFSGraph, n: int) -> FractalBitmap:
    """Union of the squares coded by every length-n path."""
    N = ifs.base.N
    bits = np.zeros((N**n, N**n), dtype=np.uint8)
    weights = N ** np.arange(n - 1, -1, -1)
    for p in enumerate_paths(ifs, n):
        x, y = path_square(p)
        bits[int(np.dot(x, weights)), int(np.dot(y, weights))] = 1
    return FractalBitmap(N, n, bits)


def nesting_check(g: BaseGraph, n: int, variant: str = "looped", max_side: int = DEFAULT_MAX_SIDE) -> bool:
    """Every set pixel at level n+1 lies in a set square at level n."""
    fine = lambda_bitmap(g, n + 1, variant, max_side).bits
    coarse = lambda_bitmap(g, n, variant, max_side).bits
    N = g.N
    ix, iy = np.nonzero(fine)
    return bool(coarse[ix // N, iy // N].all())


def hausdorff_dims(g: BaseGraph) -> tuple[float, float]:
    """(dim of the limit set, dim of the limit set minus the diagonal)."""
    if not g.E:
        raise ValueError("base graph has no edges")
    off = math.log(len(g.E)) / math.log(g.N)
    return max(off, 1.0), off


def box_count_lambda12(g: BaseGraph, n: int, max_side: int = DEFAULT_MAX_SIDE) -> int:
    """Number of level-n squares coded by walks that stay in the V1->V2 class."""
    _guard_side(g.N, n, max_side)
    ifs = build_ifs_graph(g)
    squares = {path_square(p) for p in product(ifs.classes["12"], repeat=n)}
    return len(squares)


def permuted_bitmap(g: BaseGraph, n: int, perm, variant: str = "looped", max_side: int = DEFAULT_MAX_SIDE) -> FractalBitmap:
    """Bitmap of the relabeled base graph (vertex v renamed perm[v])."""
    return lambda_bitmap(g.relabel(perm), n, variant, max_side)


def digit_permutation_index(perm, N: int, n: int) -> np.ndarray:
    """idx[i] = index of the word obtained by applying perm^-1 digit-wise to word i."""
    inv = np.argsort(np.asarray(perm))
    idx = np.zeros(1, dtype=np.int64)
    for _ in range(n):
        idx = (idx[:, None] * N + inv[None, :]).ravel()
    return idx
