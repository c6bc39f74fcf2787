"""Word algebra over the base alphabet: types, prefixes, blocks, ell, S and degrees.

Words are tuples of base labels, most significant (coarsest level) digit first.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import groupby

from .base_graph import BaseGraph

Word = tuple[int, ...]

VARIANTS = ("looped", "simple", "clustered")


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[Word, ...]

    @property
    def r(self) -> int:
        return len(self.blocks)


def typ(w: Word, g: BaseGraph) -> int:
    """1 if every digit is in V1, 2 if every digit is in V2, else 0."""
    if not w:
        raise ValueError("type of the empty word is undefined")
    first = g.types[w[0]]
    return first if all(g.types[d] == first for d in w) else 0


def split_common_prefix(x: Word, y: Word) -> tuple[int, Word, Word]:
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} != {len(y)}")
    k = 0
    while k < len(x) and x[k] == y[k]:
        k += 1
    return k, x[k:], y[k:]


def ell(w: Word, g: BaseGraph) -> int:
    """Length of the longest uniform-type suffix of ``w``."""
    t = g.types
    last = t[w[-1]]
    i = 1
    while i < len(w) and t[w[-1 - i]] == last:
        i += 1
    return i


def s_value(w: Word, g: BaseGraph) -> int:
    # sum_{r=0}^{ell-1} prod_{j=1}^{r} deg(w_{n-j}); r=0 term is 1
    total, prod = 1, 1
    n = len(w)
    for j in range(1, ell(w, g)):
        prod *= g.deg[w[n - 1 - j]]
        total += prod
    return total


def degree_formula(w: Word, g: BaseGraph, variant: str = "looped") -> int:
    """Closed-form degree of ``w`` at level ``len(w)``.

    A loop counts +2 in the looped variant. The clustered variant adds the
    RE-degree of the last digit.
    """
    base = s_value(w, g) * g.deg[w[-1]]
    if variant == "looped":
        return base + 2
    if variant == "simple":
        return base
    if variant == "clustered":
        return base + g.deg_hat[w[-1]] - g.deg[w[-1]]
    raise ValueError(f"unknown variant {variant!r}")


def block_decompose(postfix: Word, g: BaseGraph) -> BlockDecomposition:
    if not postfix:
        raise ValueError("cannot decompose an empty postfix")
    return BlockDecomposition(
        tuple(tuple(run) for _, run in groupby(postfix, key=lambda d: g.types[d]))
    )


def block_count(postfix: Word, g: BaseGraph) -> int:
    """Number of maximal same-type runs; 0 for the empty word."""
    if not postfix:
        return 0
    t = g.types
    return 1 + sum(t[a] != t[b] for a, b in zip(postfix, postfix[1:]))


def format_word(w: Word, N: int) -> str:
    sep = "" if N <= 10 else "."
    return sep.join(map(str, w))


def parse_word(text: str, N: int) -> Word:
    parts = text.split(".") if N > 10 else list(text)
    w = tuple(int(p) for p in parts)
    if any(not 0 <= d < N for d in w):
        raise ValueError(f"digit out of range in {text!r}")
    return w


def word_index(w: Word, N: int) -> int:
    idx = 0
    for d in w:
        idx = idx * N + d
    return idx


def index_word(idx: int, N: int, n: int) -> Word:
    digits = [0] * n
    for i in range(n - 1, -1, -1):
        idx, digits[i] = divmod(idx, N)
    return tuple(digits)
