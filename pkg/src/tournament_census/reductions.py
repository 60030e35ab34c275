"""Reductions between pattern problems.

* ``generic_count``: tripartite matrix-product counting for any pattern on
  at most six vertices (labeled copies of the three label blocks, two 0/1
  compatibility matrices, one product, divide by the automorphism order).
* ``count_colorful``: copies with exactly one vertex per part, by
  inclusion-exclusion over part unions.
* ``color_coding_detect``: random k-colourings; a colourful copy of ``T``
  becomes a ``K_k`` in an auxiliary undirected graph.
* ``clique_detect_via_count``: triangle (``K_m``) detection through colourful
  counting of a pattern whose non-signature part has ``m`` vertices.

Derandomisation is replaced by independent random trials with an explicit
failure bound.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .catalog import automorphism_order, classify, get_catalog, is_signature
from .core import Tournament, induced
from .count import count_pattern
from .detect import Witness
from .errors import DivisionCheck, InternalInconsistency, NotASignature, PartitionMismatch, TooLarge
from .pairstats import matmul01

__all__ = [
    "VertexPartition",
    "label_blocks",
    "generic_count",
    "count_colorful",
    "color_coding_trials",
    "color_coding_detect",
    "clique_pattern",
    "clique_graph",
    "clique_detect_via_count",
]

GENERIC_MAX_K = 6
# Upper bound on the entries of any one compatibility matrix.
GENERIC_MAX_ENTRIES = 1 << 26


@dataclass(frozen=True)
class VertexPartition:
    """``k`` pairwise-disjoint vertex sets; empty parts are allowed."""

    parts: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        parts = tuple(tuple(sorted(int(v) for v in p)) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        seen: set[int] = set()
        for p in parts:
            if len(set(p)) != len(p) or seen & set(p):
                raise PartitionMismatch("parts of a partition must be pairwise disjoint")
            seen |= set(p)

    @classmethod
    def from_labels(cls, labels: Sequence[int], k: int) -> "VertexPartition":
        labels = np.asarray(labels)
        return cls(tuple(tuple(np.flatnonzero(labels == i).tolist()) for i in range(k)))

    @property
    def k(self) -> int:
        return len(self.parts)

    def covers(self, n: int) -> bool:
        return sorted(v for p in self.parts for v in p) == list(range(n))


# ---------------------------------------------------------------------------
# tripartite counting


def label_blocks(k: int) -> tuple[range, range, range]:
    """Labels ``0..k-1`` split into blocks of sizes floor(k/3), ceil((k-1)/3), ceil(k/3)."""
    s1, s2 = k // 3, -(-(k - 1) // 3)
    return range(0, s1), range(s1, s1 + s2), range(s1 + s2, k)


def _falling(n: int, s: int) -> int:
    return math.perm(n, s) if s <= n else 0


def _labeled_copies(g: Tournament, t: Tournament, block: range) -> np.ndarray:
    """Injective maps ``block -> V(g)`` (one row each) preserving every edge inside the block."""
    s = len(block)
    if s == 0:
        return np.zeros((1, 0), dtype=np.intp)
    rows = np.array(list(itertools.permutations(range(g.n), s)), dtype=np.intp).reshape(-1, s)
    keep = np.ones(len(rows), dtype=bool)
    for i, j in itertools.combinations(range(s), 2):
        keep &= g.adj[rows[:, i], rows[:, j]] == t.adj[block[i], block[j]]
    return rows[keep]


def _compatible(g: Tournament, t: Tournament, h: np.ndarray, hb: range, j: np.ndarray, jb: range) -> np.ndarray:
    """``Q[x, y] = 1`` iff copies ``h[x]`` and ``j[y]`` are disjoint and their union is labeled-isomorphic to ``T`` on ``hb + jb``."""
    q = np.ones((len(h), len(j)), dtype=bool)
    for a in range(len(hb)):
        for b in range(len(jb)):
            u = h[:, a][:, None]
            w = j[:, b][None, :]
            q &= (u != w) & (g.adj[u, w] == t.adj[hb[a], jb[b]])
    return q.astype(np.uint8)


def generic_count(g: Tournament, t: Tournament) -> int:
    """Number of copies of ``t`` in ``g`` via one product of compatibility matrices."""
    k = t.n
    if k > GENERIC_MAX_K:
        raise TooLarge(f"generic counting supports patterns with k <= {GENERIC_MAX_K}, got {k}")
    if g.n < k:
        return 0
    blocks = label_blocks(k)
    sizes = [_falling(g.n, len(b)) for b in blocks]
    if max(sizes[0] * sizes[1], sizes[1] * sizes[2], sizes[0] * sizes[2]) > GENERIC_MAX_ENTRIES:
        raise TooLarge(f"compatibility matrices for n={g.n}, k={k} exceed {GENERIC_MAX_ENTRIES} entries")
    s1, s2, s3 = (_labeled_copies(g, t, b) for b in blocks)
    a1, a2, a3 = blocks
    q1 = _compatible(g, t, s1, a1, s2, a2)
    q2 = _compatible(g, t, s2, a2, s3, a3)
    q13 = _compatible(g, t, s1, a1, s3, a3)
    q3 = matmul01(q1, q2)
    labeled = int((q3.astype(np.int64) * q13).sum())
    aut = automorphism_order(t)
    if labeled % aut:
        raise DivisionCheck(f"{labeled} labeled copies is not divisible by |Aut(T)| = {aut}")
    return labeled // aut


# ---------------------------------------------------------------------------
# colourful counting


def _default_counter(t: Tournament) -> Callable[[Tournament], int]:
    if 3 <= t.n <= 5:
        name = classify(t)
        return lambda h: count_pattern(h, name)
    return lambda h: generic_count(h, t)


def count_colorful(
    g: Tournament,
    t: Tournament,
    partition: VertexPartition,
    counter: Optional[Callable[[Tournament], int]] = None,
) -> int:
    """Copies of ``t`` with exactly one vertex in each part, by inclusion-exclusion.

    ``counter(h)`` must return the number of copies of ``t`` in ``h``; the
    default uses the fastest exact engine for ``t``.
    """
    k = t.n
    if partition.k != k:
        raise PartitionMismatch(f"partition has {partition.k} parts, pattern has {k} vertices")
    if not partition.covers(g.n):
        raise PartitionMismatch(f"partition does not cover the vertex set 0..{g.n - 1}")
    if any(len(p) == 0 for p in partition.parts):
        return 0  # every inclusion-exclusion term cancels
    counter = counter or _default_counter(t)
    total = 0
    for size in range(1, k + 1):
        sign = -1 if (k - size) % 2 else 1
        for chosen in itertools.combinations(range(k), size):
            vs = [v for i in chosen for v in partition.parts[i]]
            if len(vs) < k:
                continue
            total += sign * counter(induced(g, vs))
    if total < 0:
        raise InternalInconsistency(f"inclusion-exclusion gave a negative count {total}")
    return total


# ---------------------------------------------------------------------------
# colour coding


def color_coding_trials(k: int, delta: float) -> int:
    """Trials needed so a present pattern is missed with probability at most ``delta``."""
    if not 0 < delta < 1:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    return max(1, math.ceil(k**k * math.log(1 / delta)))


def _colorful_clique(und: np.ndarray, labels: np.ndarray, k: int) -> Optional[list[int]]:
    """Lexicographically first clique with one vertex in each colour class ``0..k-1``."""
    masks = [labels == c for c in range(k)]

    def extend(chosen: list[int], common: np.ndarray) -> Optional[list[int]]:
        c = len(chosen)
        if c == k:
            return chosen
        # prune: every remaining colour class needs a common neighbour
        if any(not np.any(common & masks[q]) for q in range(c, k)):
            return None
        for v in np.flatnonzero(common & masks[c]):
            found = extend(chosen + [int(v)], common & und[v])
            if found:
                return found
        return None

    return extend([], np.ones(len(labels), dtype=bool))


def color_coding_detect(
    g: Tournament,
    t: Tournament,
    delta: float = 1e-3,
    seed: int = 0,
    trials: Optional[int] = None,
) -> Optional[Witness]:
    """One-sided randomized detection of ``t`` (3 <= k <= 5).

    A returned witness is always a genuine copy, listed in ``t``'s label
    order; None is wrong with probability at most ``delta``.
    """
    k = t.n
    if not 3 <= k <= 5:
        raise ValueError(f"pattern must have 3..5 vertices, got {k}")
    name = classify(t)
    trials = color_coding_trials(k, delta) if trials is None else trials
    if g.n < k:
        return None
    rng = np.random.default_rng(seed)
    ga = g.adj.astype(bool)
    ta = t.adj.astype(bool)
    for _ in range(trials):
        labels = rng.integers(0, k, size=g.n)
        star = ga & ta[np.ix_(labels, labels)]
        found = _colorful_clique(star | star.T, labels, k)
        if found is not None:
            w = Witness(tuple(found), name)
            if classify(induced(g, found)) != name:
                raise InternalInconsistency(f"colour-coding witness {found} is not a copy of {name}")
            return w
    return None


# ---------------------------------------------------------------------------
# clique detection through tournament counting


def clique_pattern(m: int) -> tuple[str, tuple[int, ...]]:
    """The first catalog pattern ``T`` (smallest k) with ``k - sig(T) = m`` and its signature.

    Within k <= 5 this exists only for m <= 3.
    """
    cat = get_catalog()
    for k in (3, 4, 5):
        for name in cat.names(k):
            info = cat[name]
            if k - len(info.signature) == m:
                return name, info.signature
    raise ValueError(f"no pattern on at most five vertices has k - sig(T) = {m}")


def clique_graph(gu: np.ndarray, t: Tournament, r: int, part_of: np.ndarray) -> Tournament:
    """The auxiliary tournament on ``r + n`` vertices.

    Vertices ``0..r-1`` are the signature singletons, ``r + v`` is graph
    vertex ``v``; ``part_of`` gives the part (pattern label) of every
    auxiliary vertex and ``t``'s first ``r`` labels are its signature.
    """
    n_all = len(part_of)
    gu_all = np.zeros((n_all, n_all), dtype=bool)
    gu_all[r:, r:] = gu
    pi = part_of[:, None]
    pj = part_of[None, :]
    te = t.adj.astype(bool)[pi, pj]
    idx = np.arange(n_all)
    same = pi == pj
    touches_sig = (pi < r) | (pj < r)
    adj = np.where(same, idx[:, None] < idx[None, :], np.where(touches_sig, te, te == gu_all))
    np.fill_diagonal(adj, False)
    return Tournament(adj.astype(np.uint8), check=False)


def clique_detect_via_count(
    gu: np.ndarray,
    m: int,
    t: Tournament,
    r: Iterable[int],
    seed: int = 0,
    delta: float = 1e-3,
    trials: Optional[int] = None,
) -> bool:
    """Decide whether the undirected graph ``gu`` contains ``K_m`` by colourful counting of ``t``.

    ``r`` must be a signature of ``t`` with ``|V(t)| - |r| = m``. One-sided:
    True is always correct, False is wrong with probability at most ``delta``.
    """
    gu = np.asarray(gu, dtype=bool)
    if gu.ndim != 2 or gu.shape[0] != gu.shape[1] or not np.array_equal(gu, gu.T) or gu.diagonal().any():
        raise ValueError("undirected graph must be a symmetric 0/1 matrix with zero diagonal")
    r = tuple(sorted(set(int(v) for v in r)))
    k = t.n
    if k - len(r) != m:
        raise ValueError(f"pattern has {k} vertices and a signature of size {len(r)}, not leaving {m}")
    if not is_signature(t, r):
        raise NotASignature(f"{list(r)} is not a signature of the pattern")
    order = list(r) + [v for v in range(k) if v not in r]
    ts = Tournament(t.adj[np.ix_(order, order)], check=False)
    rr = len(r)
    n = gu.shape[0]
    if n < m:
        return False
    trials = color_coding_trials(m, delta) if trials is None else trials
    counter = _default_counter(ts)
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        labels = rng.integers(rr, k, size=n)
        part_of = np.concatenate([np.arange(rr), labels])
        aux = clique_graph(gu, ts, rr, part_of)
        if count_colorful(aux, ts, VertexPartition.from_labels(part_of, k), counter) > 0:
            return True
    return False
