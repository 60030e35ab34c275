"""Definitional brute-force oracles shared by the test modules.

Everything here is deliberately naive and independent of the engines
under test (plain loops over vertices and subsets).
"""
from __future__ import annotations

import itertools
from math import comb

import numpy as np

from tournament_census.catalog import classify
from tournament_census.core import Tournament, induced, random_tournament


def corpus(count: int, n_min: int, n_max: int, seed0: int = 0) -> list[Tournament]:
    """Fixed-seed random tournaments with n cycling through ``n_min..n_max``."""
    span = n_max - n_min + 1
    return [random_tournament(n_min + i % span, seed0 + i) for i in range(count)]


def pair_stats_loop(g: Tournament):
    """``(dplus, dminus, p)`` by the triple loop over ``(u, v, w)``."""
    a = g.adj.tolist()
    n = g.n
    dp = np.zeros((n, n), dtype=np.int64)
    dm = np.zeros((n, n), dtype=np.int64)
    p = np.zeros((n, n), dtype=np.int64)
    for u in range(n):
        for v in range(n):
            if u == v:
                continue
            for w in range(n):
                if w in (u, v):
                    continue
                dp[u, v] += a[u][w] and a[v][w]
                dm[u, v] += a[w][u] and a[w][v]
                p[u, v] += a[u][w] and a[w][v]
    return dp, dm, p


def c4_loop(left, right, edges) -> int:
    es = set(edges)
    total = 0
    for u1, u2 in itertools.combinations(left, 2):
        for w1, w2 in itertools.combinations(right, 2):
            if {(u1, w1), (u1, w2), (u2, w1), (u2, w2)} <= es:
                total += 1
    return total


def colorful_loop(g: Tournament, name: str, k: int, labels) -> int:
    labels = list(labels)
    return sum(
        1
        for c in itertools.combinations(range(g.n), k)
        if len({labels[v] for v in c}) == k and classify(induced(g, c)) == name
    )


def count_loop(g: Tournament, name: str, k: int) -> int:
    return sum(1 for c in itertools.combinations(range(g.n), k) if classify(induced(g, c)) == name)


def has_triangle(gu: np.ndarray) -> bool:
    n = gu.shape[0]
    return any(gu[a, b] and gu[b, c] and gu[a, c] for a, b, c in itertools.combinations(range(n), 3))


def reachability(g: Tournament) -> np.ndarray:
    r = g.adj.astype(bool) | np.eye(g.n, dtype=bool)
    for w in range(g.n):
        r |= r[:, [w]] & r[[w], :]
    return r


def binom_sum_check(cv, n: int, k: int) -> bool:
    return sum(cv.as_dict().values()) == comb(n, k)


def random_graph(n: int, p: float, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    upper = np.triu(rng.random((n, n)) < p, 1)
    return upper | upper.T
