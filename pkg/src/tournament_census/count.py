"""Exact sub-tournament counting on three, four and five vertices.

Four-vertex counts come from four edge sums and a lower-triangular system.
Five-vertex counts combine per-vertex extension counting (patterns with a
source or sink), bipartite four-cycle counting for H8, and a 5x5 solve of
edge-sum table rows 3, 5, 8, 15 and 18 for the rest. Every result is re-checked
against all twenty identities before it is returned.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

import numpy as np

from . import exact, table1
from .catalog import NAMES, Catalog, CountVector, get_catalog
from .core import Tournament, induced
from .errors import InternalInconsistency, NoSourceOrSink, TooFewVertices
from .pairstats import (
    PairStats,
    c4_from_biadjacency,
    edge_stats,
    sum_binom,
)

__all__ = [
    "CountVector",
    "CensusSystem",
    "K4_MATRIX",
    "count_3",
    "count_4",
    "count_4_rhs",
    "table1_rhs",
    "census_system",
    "count_by_extension",
    "extension_plan",
    "count_H8",
    "count_5",
    "count_k",
    "count_pattern",
    "quasirandomness_report",
]

MAX_CENSUS_N = 2**14

# Rows: sum C(d+,2); sum d+ d-; sum d+ p(u,v); C(n,4). The third sum sees each
# copy of D three times, once per vertex of its 3-cycle playing v.
K4_MATRIX = ((1, 0, 0, 0), (1, 1, 0, 0), (1, 0, 3, 0), (1, 1, 1, 1))
EXTENSION_PATTERNS = ("T5", "H1", "H1T", "H2", "H2T", "H3")


@dataclass(frozen=True)
class CensusSystem:
    k: int
    names: tuple[str, ...]
    coefficients: tuple[tuple[int, ...], ...]
    rhs: tuple[int, ...]

    def residuals(self, counts: CountVector) -> list[int]:
        x = [counts[name] for name in self.names]
        return [sum(c * v for c, v in zip(row, x)) - b for row, b in zip(self.coefficients, self.rhs)]


def _require(g: Tournament, k: int) -> None:
    if g.n < k:
        raise TooFewVertices(f"counting {k}-vertex patterns needs n >= {k}, got {g.n}")
    if g.n > MAX_CENSUS_N:
        raise ValueError(f"census inputs are capped at n = {MAX_CENSUS_N}")


def _as_count(x: Fraction, what: str) -> int:
    if x.denominator != 1 or x < 0:
        raise InternalInconsistency(f"{what} solved to {x}, not a nonnegative integer")
    return int(x)


def count_3(g: Tournament) -> CountVector:
    """#T3 = sum over v of C(outdeg(v), 2); #C3 is the remainder."""
    _require(g, 3)
    deg = g.out_degrees()
    t3 = sum_binom([(deg, 2)])
    return CountVector(3, {"T3": t3, "C3": comb(g.n, 3) - t3})


def count_4_rhs(g: Tournament, stats: PairStats | None = None) -> tuple[int, int, int, int]:
    es = edge_stats(g, stats)
    return (
        sum_binom([(es.dplus, 2)]),
        sum_binom([(es.dplus, 1), (es.dminus, 1)]),
        sum_binom([(es.dplus, 1), (es.puv, 1)]),
        comb(g.n, 4),
    )


def count_4(g: Tournament, stats: PairStats | None = None) -> CountVector:
    _require(g, 4)
    sol = exact.forward_substitute(K4_MATRIX, count_4_rhs(g, stats))
    counts = {name: _as_count(x, name) for name, x in zip(NAMES[4], sol)}
    return CountVector(4, counts)


def table1_rhs(g: Tournament, stats: PairStats | None = None) -> list[int]:
    _require(g, 5)
    return table1.evaluate(edge_stats(g, stats))


def census_system(g: Tournament, k: int, stats: PairStats | None = None) -> CensusSystem:
    if k == 4:
        return CensusSystem(4, NAMES[4], K4_MATRIX, count_4_rhs(g, stats))
    if k == 5:
        return CensusSystem(5, NAMES[5], table1.COEFFICIENTS, tuple(table1_rhs(g, stats)))
    raise ValueError(f"no census system for k={k}")


def extension_plan(name: str, catalog: Catalog | None = None) -> tuple[str, str]:
    """``("out" | "in", remainder name)`` for a pattern with a source or a sink.

    A source is preferred when the pattern has both.
    """
    catalog = catalog or get_catalog()
    rep = catalog[name].rep
    deg = rep.out_degrees()
    k = rep.n
    for side, target in (("out", k - 1), ("in", 0)):
        hits = np.flatnonzero(deg == target)
        if hits.size:
            v = int(hits[0])
            rest = [w for w in range(k) if w != v]
            return side, catalog.classify(induced(rep, rest))
    raise NoSourceOrSink(f"{name} has neither a source nor a sink")


def _neighbourhoods(g: Tournament) -> list[tuple[np.ndarray, np.ndarray]]:
    return [(np.flatnonzero(g.adj[v]), np.flatnonzero(g.adj[:, v])) for v in range(g.n)]


def _map(fn, items, workers: int):
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def _sub(g: Tournament, idx: np.ndarray) -> Tournament:
    return Tournament(g.adj[np.ix_(idx, idx)], check=False)


def _extension_counts(
    g: Tournament,
    names: Sequence[str],
    hoods,
    catalog: Catalog,
    workers: int = 1,
) -> dict[str, int]:
    plans = {name: extension_plan(name, catalog) for name in names}
    sides = {side for side, _ in plans.values()}

    def per_vertex(v: int) -> dict[str, CountVector]:
        out = {}
        for side in sides:
            idx = hoods[v][0] if side == "out" else hoods[v][1]
            if len(idx) >= 4:
                out[side] = count_4(_sub(g, idx))
        return out

    per = _map(per_vertex, range(g.n), workers)
    totals = {}
    for name, (side, rest) in plans.items():
        totals[name] = sum(cv[side][rest] for cv in per if side in cv)
    return totals


def count_by_extension(
    g: Tournament,
    name: str,
    catalog: Catalog | None = None,
    workers: int = 1,
) -> int:
    """Count a pattern with a source (sink) by summing four-vertex counts over out- (in-) neighbourhoods."""
    catalog = catalog or get_catalog()
    if catalog[name].k != 5:
        raise ValueError(f"{name} is not a five-vertex pattern")
    _require(g, 5)
    return _extension_counts(g, [name], _neighbourhoods(g), catalog, workers)[name]


def count_H8(g: Tournament, workers: int = 1, hoods=None) -> int:
    """Sum over v of the four-cycles in the bipartite graph N+(v) -> N-(v)."""
    _require(g, 5)
    hoods = hoods if hoods is not None else _neighbourhoods(g)

    def per_vertex(v: int) -> int:
        outs, ins = hoods[v]
        return c4_from_biadjacency(g.adj[np.ix_(outs, ins)])

    return sum(_map(per_vertex, range(g.n), workers))


def count_5(
    g: Tournament,
    catalog: Catalog | None = None,
    workers: int = 1,
    stats: PairStats | None = None,
) -> CountVector:
    _require(g, 5)
    catalog = catalog or get_catalog()
    hoods = _neighbourhoods(g)
    known = _extension_counts(g, EXTENSION_PATTERNS, hoods, catalog, workers)
    known["H8"] = count_H8(g, workers, hoods)
    rhs = table1_rhs(g, stats)

    col = {name: i for i, name in enumerate(NAMES[5])}
    square = []
    b = []
    for r in table1.SOLVE_ROWS:
        row = table1.COEFFICIENTS[r - 1]
        square.append([row[col[name]] for name in table1.SOLVE_COLUMNS])
        b.append(rhs[r - 1] - sum(row[col[name]] * c for name, c in known.items()))
    sol = exact.solve(square, b)
    counts = dict(known)
    for name, x in zip(table1.SOLVE_COLUMNS, sol):
        counts[name] = _as_count(x, name)
    cv = CountVector(5, {name: counts[name] for name in NAMES[5]})

    system = CensusSystem(5, NAMES[5], table1.COEFFICIENTS, tuple(rhs))
    bad = [i + 1 for i, res in enumerate(system.residuals(cv)) if res]
    if bad:
        raise InternalInconsistency(f"edge-sum table rows {bad} fail for the computed census")
    if cv.total != comb(g.n, 5):
        raise InternalInconsistency(f"census sums to {cv.total}, expected C({g.n},5) = {comb(g.n, 5)}")
    return cv


def count_k(g: Tournament, k: int, workers: int = 1) -> CountVector:
    if k == 3:
        return count_3(g)
    if k == 4:
        return count_4(g)
    if k == 5:
        return count_5(g, workers=workers)
    raise ValueError(f"k must be 3, 4 or 5, got {k}")


def count_pattern(g: Tournament, name: str, catalog: Catalog | None = None) -> int:
    """Count one named pattern with the cheapest available engine."""
    catalog = catalog or get_catalog()
    k = catalog[name].k
    if g.n < k:
        return 0
    if k in (3, 4):
        return count_k(g, k)[name]
    if name in EXTENSION_PATTERNS:
        return count_by_extension(g, name, catalog)
    if name == "H8":
        return count_H8(g)
    return count_5(g, catalog)[name]


def quasirandomness_report(g: Tournament) -> tuple[int, Fraction]:
    """``(#T4, 3/8 * C(n,4))``: observed transitive quadruples against the uniform-model mean."""
    t4 = count_4(g)["T4"]
    return t4, Fraction(3, 8) * comb(g.n, 4)
