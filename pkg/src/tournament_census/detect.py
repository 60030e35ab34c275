"""Quadratic-time detection of the four-vertex tournaments, with witnesses.

* ``T4``: any eight vertices contain one (majority-neighbourhood search).
* ``X4``: present iff some strong component has at least four vertices; a
  4-cycle is built from a 3-cycle of that component by one extension step.
* ``D`` / ``DT``: a triangle ``a -> b -> c -> a`` splits the other vertices
  into eight classes ``N_S`` by which of ``a, b, c`` they dominate, and the
  tournament is D-free iff seven structural items hold on those classes.
  Each failed item yields an explicit copy of ``D``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Optional, Union

import numpy as np

from .catalog import classify
from .core import Tournament, find_transitive, find_triangle, scc, transpose

__all__ = [
    "Witness",
    "DFreeCertificate",
    "TriangleDecomposition",
    "ScanState",
    "triangle_decomposition",
    "scan_state",
    "find_bad_triple",
    "check_D_free",
    "detect_T4",
    "detect_X4",
    "detect_D",
    "detect_DT",
    "detect",
    "verify_witness",
]


@dataclass(frozen=True)
class Witness:
    vertices: tuple[int, ...]
    pattern: str

    def to_json(self) -> dict:
        return {"pattern": self.pattern, "vertices": list(self.vertices)}


@dataclass(frozen=True)
class DFreeCertificate:
    """Evidence that no copy of D exists.

    ``triangle`` is None when the tournament is transitive; otherwise it is
    the triangle whose classes satisfied every item.
    """

    triangle: Optional[tuple[int, int, int]]
    class_sizes: Mapping[int, int]


@dataclass(frozen=True)
class TriangleDecomposition:
    """Classes ``N_S`` keyed by a 3-bit mask: bit ``i`` set iff ``x -> triangle[i]``."""

    triangle: tuple[int, int, int]
    classes: Mapping[int, np.ndarray]

    def N(self, *positions: int) -> np.ndarray:
        mask = 0
        for p in positions:
            mask |= 1 << (p % 3)
        return self.classes[mask]


def triangle_decomposition(g: Tournament, triangle: tuple[int, int, int]) -> TriangleDecomposition:
    a = g.adj
    tri = np.array(triangle)
    mask = (a[:, tri[0]].astype(np.int64) | (a[:, tri[1]].astype(np.int64) << 1) | (a[:, tri[2]].astype(np.int64) << 2))
    mask[tri] = -1
    classes = {s: np.flatnonzero(mask == s) for s in range(8)}
    return TriangleDecomposition(tuple(int(x) for x in triangle), classes)


@dataclass(frozen=True)
class ScanState:
    """Running counts for the bad-triple scan over ordered ``X`` and ``Y``.

    ``alpha[i, m]`` = in-neighbours of ``y_m`` among ``x_0 .. x_i``;
    ``beta[i, m]``  = out-neighbours of ``y_m`` among ``x_{i+1} .. x_{p-1}``.
    """

    alpha: np.ndarray
    beta: np.ndarray


def scan_state(g: Tournament, xs: np.ndarray, ys: np.ndarray) -> ScanState:
    # alpha_i = alpha_{i-1} + [x_i -> y_m]; beta_i = beta_{i-1} - [y_m -> x_i]
    fwd = g.adj[np.ix_(xs, ys)].astype(np.int32)
    alpha = np.cumsum(fwd, axis=0)
    back = 1 - fwd
    beta = back.sum(axis=0, keepdims=True) - np.cumsum(back, axis=0)
    return ScanState(alpha, beta)


def find_bad_triple(g: Tournament, xs: np.ndarray, ys: np.ndarray):
    """Find ``x_i -> y_m -> x_j`` with ``i < j``, where ``xs`` is in transitive order.

    Returns ``(x_i, x_j, y_m)`` or None, in O(|xs| |ys|).
    """
    if len(xs) < 2 or len(ys) == 0:
        return None
    st = scan_state(g, xs, ys)
    hits = np.argwhere((st.alpha > 0) & (st.beta > 0))
    if hits.size == 0:
        return None
    i, m = (int(v) for v in hits[0])
    y = ys[m]
    col = g.adj[xs, y]
    first = int(np.flatnonzero(col[: i + 1])[0])
    second = i + 1 + int(np.flatnonzero(col[i + 1:] == 0)[0])
    return int(xs[first]), int(xs[second]), int(y)


def _backward_edge(g: Tournament, src: np.ndarray, dst: np.ndarray):
    """Some ``(y, x)`` with ``y`` in ``src``, ``x`` in ``dst`` and ``y -> x``, or None."""
    if len(src) == 0 or len(dst) == 0:
        return None
    hits = np.argwhere(g.adj[np.ix_(src, dst)])
    if hits.size == 0:
        return None
    return int(src[hits[0, 0]]), int(dst[hits[0, 1]])


def _transitive_order(g: Tournament, vs: np.ndarray) -> np.ndarray:
    scores = g.adj[np.ix_(vs, vs)].sum(axis=1, dtype=np.int64)
    return vs[np.argsort(-scores, kind="stable")]


def _d(vertices) -> "Witness":
    return Witness(tuple(int(v) for v in vertices), "D")


def check_D_free(g: Tournament) -> Union[DFreeCertificate, Witness]:
    """Decide D-freeness in O(n^2); return a certificate or a copy of D."""
    tri = find_triangle(g)
    if tri is None:
        return DFreeCertificate(None, {})
    dec = triangle_decomposition(g, tri)
    t = dec.triangle

    # item 1: nobody dominates the whole triangle
    top = dec.N(0, 1, 2)
    if len(top):
        return _d((top[0], *t))

    # item 2: N_S -> N_empty for every nonempty proper S
    bottom = dec.classes[0]
    for s in range(1, 7):
        hit = _backward_edge(g, bottom, dec.classes[s])
        if hit:
            y, x = hit
            # d outside S, e inside S, d -> e
            i = next(i for i in range(3) if not (s >> i & 1) and (s >> ((i + 1) % 3) & 1))
            return _d((t[i], x, t[(i + 1) % 3], y))

    # item 3: every N_S other than N_abc is transitive
    ordered = {}
    for s in range(7):
        cls = dec.classes[s]
        cyc = find_triangle(g, cls)
        if cyc is not None:
            d = next(i for i in range(3) if not (s >> i & 1))
            return _d((t[d], *cyc))
        ordered[s] = _transitive_order(g, cls)

    for r in range(3):
        ta, tb, tc = t[r], t[(r + 1) % 3], t[(r + 2) % 3]
        # item 4: N_a -> N_b
        hit = _backward_edge(g, dec.N(r + 1), dec.N(r))
        if hit:
            y, x = hit
            return _d((tc, x, ta, y))
        # item 5: N_ab -> N_bc
        hit = _backward_edge(g, dec.N(r + 1, r + 2), dec.N(r, r + 1))
        if hit:
            y, x = hit
            return _d((y, tb, tc, x))
        # item 6: N_a -> N_ab -> N_b
        hit = _backward_edge(g, dec.N(r, r + 1), dec.N(r))
        if hit:
            y, x = hit
            return _d((y, ta, tb, x))
        hit = _backward_edge(g, dec.N(r + 1), dec.N(r, r + 1))
        if hit:
            y, x = hit
            return _d((tc, ta, y, x))

    # item 7: no bad triple between N_a and N_bc (and rotations)
    for r in range(3):
        ta, tb = t[r], t[(r + 1) % 3]
        xs = ordered[1 << r]
        ys = ordered[(1 << ((r + 1) % 3)) | (1 << ((r + 2) % 3))]
        bad = find_bad_triple(g, xs, ys)
        if bad:
            x1, x2, y = bad
            return _d((x1, x2, ta, y))
        bad = find_bad_triple(g, ys, xs)
        if bad:
            y1, y2, x = bad
            return _d((y1, y2, tb, x))

    return DFreeCertificate(t, {s: len(v) for s, v in dec.classes.items()})


def detect_D(g: Tournament) -> Optional[Witness]:
    res = check_D_free(g)
    return res if isinstance(res, Witness) else None


def detect_DT(g: Tournament) -> Optional[Witness]:
    """D^T in ``g`` is D in the transpose; the vertex set carries over unchanged."""
    w = detect_D(transpose(g))
    return None if w is None else Witness(w.vertices, "DT")


def detect_T4(g: Tournament) -> Optional[Witness]:
    if g.n < 4:
        return None
    if g.n >= 8:
        return Witness(tuple(find_transitive(g, 4, vertices=range(8))), "T4")
    for combo in itertools.combinations(range(g.n), 4):
        if find_triangle(g, combo) is None:
            return Witness(combo, "T4")
    return None


def detect_X4(g: Tournament) -> Optional[Witness]:
    """Some strong component with >= 4 vertices contains a directed 4-cycle."""
    dec = scc(g)
    comp = dec.largest()
    if len(comp) < 4:
        return None
    a = g.adj
    c = find_triangle(g, comp)
    cyc = np.array(c)
    rest = np.array([v for v in comp if v not in c])
    into = a[np.ix_(rest, cyc)]  # into[j, i] = 1 iff rest[j] -> c[i]
    for j in np.flatnonzero(into.any(axis=1) & ~into.all(axis=1)):
        row = into[j]
        # c_i -> x -> c_{i+1} turns c_i c_{i+1} c_{i+2} into a 4-cycle
        i = next(i for i in range(3) if row[i] == 0 and row[(i + 1) % 3] == 1)
        return Witness((c[i], int(rest[j]), c[(i + 1) % 3], c[(i + 2) % 3]), "X4")
    dominating = rest[into.all(axis=1)]
    dominated = rest[~into.any(axis=1)]
    hit = _backward_edge(g, dominated, dominating)
    if hit is None:
        raise AssertionError("component is not strongly connected")
    b, top = hit
    # top -> c0 -> c1 -> b -> top
    return Witness((top, c[0], c[1], b), "X4")


_DETECTORS = {"T4": detect_T4, "X4": detect_X4, "D": detect_D, "DT": detect_DT}


def detect(g: Tournament, pattern: str) -> Optional[Witness]:
    try:
        fn = _DETECTORS[pattern]
    except KeyError:
        raise ValueError(f"pattern must be one of {sorted(_DETECTORS)}, got {pattern!r}") from None
    return fn(g)


def verify_witness(g: Tournament, w: Witness) -> bool:
    from .core import induced

    vs = w.vertices
    return 3 <= len(vs) <= 5 and len(set(vs)) == len(vs) and classify(induced(g, vs)) == w.pattern
