"""Pairwise statistics of a tournament computed with matrix products.

For an ordered pair ``(u, v)``:

* ``dplus[u, v]``  = |N+(u) & N+(v)|      (entry of A+ A+^T)
* ``dminus[u, v]`` = |N-(u) & N-(v)|      (entry of A- A-^T)
* ``p[u, v]``      = #{w : u -> w -> v}   (entry of A+ A+)

with ``A- = J - I - A+``. Products run through BLAS in floating point; the
operands are 0/1 so every partial sum is an integer bounded by the inner
dimension, which keeps the result exact (float32 below 2**24, float64
below 2**53).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .core import Tournament

__all__ = [
    "PairStats",
    "matmul01",
    "compute_pair_stats",
    "edge_stats",
    "bipartite_c4_count",
    "c4_from_biadjacency",
    "sum_binom",
]


def matmul01(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Exact integer product of two 0/1 matrices."""
    inner = x.shape[1]
    if inner < 2**24:
        dt = np.float32
    elif inner < 2**53:
        dt = np.float64
    else:  # pragma: no cover - far beyond any input cap
        return x.astype(object) @ y.astype(object)
    out = x.astype(dt, copy=False) @ y.astype(dt, copy=False)
    return out.astype(np.int64 if inner >= 2**31 else np.int32)


@dataclass(frozen=True)
class PairStats:
    dplus: np.ndarray
    dminus: np.ndarray
    p: np.ndarray

    @property
    def n(self) -> int:
        return self.p.shape[0]

    @property
    def p_uv(self) -> np.ndarray:
        return self.p

    @property
    def p_vu(self) -> np.ndarray:
        return self.p.T

    def pair(self, u: int, v: int) -> tuple[int, int, int, int]:
        """``(dplus, dminus, p_uv, p_vu)`` for the ordered pair ``(u, v)``."""
        return (int(self.dplus[u, v]), int(self.dminus[u, v]), int(self.p[u, v]), int(self.p[v, u]))


def compute_pair_stats(g: Tournament) -> PairStats:
    a = g.adj
    n = g.n
    am = (1 - a).astype(np.uint8)
    np.fill_diagonal(am, 0)
    dplus = matmul01(a, a.T)
    dminus = matmul01(am, am.T)
    p = matmul01(a, a)
    for m in (dplus, dminus, p):
        np.fill_diagonal(m, 0)
        m.setflags(write=False)
    assert dplus.shape == (n, n)
    return PairStats(dplus, dminus, p)


@dataclass(frozen=True)
class EdgeStats:
    """Pair statistics restricted to the edges ``u -> v`` of the tournament."""

    dplus: np.ndarray
    dminus: np.ndarray
    puv: np.ndarray
    pvu: np.ndarray


def edge_stats(g: Tournament, stats: PairStats | None = None) -> EdgeStats:
    stats = stats if stats is not None else compute_pair_stats(g)
    mask = g.adj.astype(bool)
    as64 = lambda m: m[mask].astype(np.int64)  # noqa: E731
    return EdgeStats(as64(stats.dplus), as64(stats.dminus), as64(stats.p), as64(stats.p.T))


def _binom_array(x: np.ndarray, k: int) -> np.ndarray:
    x = x.astype(np.int64, copy=False)
    if k == 0:
        return np.ones_like(x)
    if k == 1:
        return x
    if k == 2:
        return x * (x - 1) // 2
    if k == 3:
        return x * (x - 1) * (x - 2) // 6
    raise ValueError(f"unsupported binomial order {k}")


def sum_binom(terms: Iterable[tuple[np.ndarray, int]]) -> int:
    """Exact ``sum_e prod_i C(x_i[e], k_i)`` as a Python int.

    Each product fits in int64 for n <= 2**14; the final reduction is done
    in chunks and accumulated in Python ints.
    """
    prod = None
    for x, k in terms:
        b = _binom_array(x, k)
        prod = b if prod is None else prod * b
    if prod is None:
        return 0
    total = 0
    chunk = 1 << 16
    for s in range(0, prod.size, chunk):
        total += int(prod[s:s + chunk].sum())
    return total


def c4_from_biadjacency(m: np.ndarray) -> int:
    """Undirected four-cycles in a bipartite graph given its biadjacency matrix.

    Sum over unordered left pairs of C(codegree, 2).
    """
    if m.shape[0] < 2 or m.shape[1] < 2:
        return 0
    codeg = matmul01(m, m.T).astype(np.int64)
    all_pairs = int((codeg * (codeg - 1) // 2).sum())
    d = np.diagonal(codeg)
    diag = int((d * (d - 1) // 2).sum())
    return (all_pairs - diag) // 2


def bipartite_c4_count(left: Iterable[int], right: Iterable[int], edges: Iterable[tuple[int, int]]) -> int:
    """Four-cycles ``u1 w1 u2 w2`` with ``u1 != u2`` in ``left`` and ``w1 != w2`` in ``right``."""
    left = list(left)
    right = list(right)
    if set(left) & set(right):
        raise ValueError("sides of a bipartite graph must be disjoint")
    li = {v: i for i, v in enumerate(left)}
    ri = {v: i for i, v in enumerate(right)}
    m = np.zeros((len(left), len(right)), dtype=np.uint8)
    for u, w in edges:
        m[li[u], ri[w]] = 1
    return c4_from_biadjacency(m)

