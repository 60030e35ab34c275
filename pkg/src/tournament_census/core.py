"""Tournament representation, text I/O, generators and structural primitives.

A tournament is stored as a dense ``n x n`` 0/1 ``uint8`` matrix ``adj`` with
``adj[u, v] == 1`` iff the edge is oriented ``u -> v``. Vertices are
``0 .. n-1``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import BadSubset, NotATournament, ParseError, TooFewVertices

__all__ = [
    "Tournament",
    "SccDecomposition",
    "parse_tournament",
    "parse_undirected",
    "format_tournament",
    "format_edges",
    "read_text",
    "random_tournament",
    "splitmix64",
    "transitive_tournament",
    "rotational_tournament",
    "transpose",
    "induced",
    "scc",
    "find_transitive",
    "is_transitive",
    "find_triangle",
]

_MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


class Tournament:
    """Immutable tournament backed by a read-only adjacency matrix."""

    __slots__ = ("adj",)

    def __init__(self, adj, *, check: bool = True):
        a = np.array(adj, dtype=np.uint8, copy=True)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise NotATournament(f"adjacency must be a non-empty square matrix, got shape {a.shape}")
        if check:
            _check_tournament(a)
        a.setflags(write=False)
        self.adj = a

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Tournament":
        a = np.zeros((n, n), dtype=np.uint8)
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise NotATournament(f"edge ({u},{v}) out of range for n={n}")
            if a[u, v] or a[v, u]:
                raise NotATournament(f"pair {{{u},{v}}} appears more than once")
            a[u, v] = 1
        return cls(a)

    @property
    def n(self) -> int:
        return self.adj.shape[0]

    def edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u, v])

    def out_degrees(self) -> np.ndarray:
        return self.adj.sum(axis=1, dtype=np.int64)

    def in_degrees(self) -> np.ndarray:
        return self.adj.sum(axis=0, dtype=np.int64)

    def out_neighbors(self, v: int) -> np.ndarray:
        return np.flatnonzero(self.adj[v])

    def in_neighbors(self, v: int) -> np.ndarray:
        return np.flatnonzero(self.adj[:, v])

    def __eq__(self, other):
        if not isinstance(other, Tournament):
            return NotImplemented
        return self.adj.shape == other.adj.shape and bool(np.array_equal(self.adj, other.adj))

    def __hash__(self):
        return hash((self.n, self.adj.tobytes()))

    def __repr__(self):
        if self.n <= 8:
            rows = "/".join("".join(map(str, r)) for r in self.adj.tolist())
            return f"Tournament(n={self.n}, {rows})"
        return f"Tournament(n={self.n})"


def _check_tournament(a: np.ndarray) -> None:
    if np.any(a > 1):
        raise NotATournament("entries must be 0 or 1")
    if np.any(np.diagonal(a)):
        i = int(np.flatnonzero(np.diagonal(a))[0])
        raise NotATournament(f"self-loop at vertex {i}")
    s = a.astype(np.int16) + a.T
    np.fill_diagonal(s, 1)
    bad = np.argwhere(s != 1)
    if bad.size:
        u, v = map(int, bad[0])
        raise NotATournament(f"pair {{{u},{v}}} has A[u][v]+A[v][u] = {int(s[u, v])}")


@dataclass(frozen=True)
class SccDecomposition:
    """Strong components in condensation order; earlier ones dominate later ones."""

    components: tuple[tuple[int, ...], ...]
    component_of: tuple[int, ...]

    def __len__(self):
        return len(self.components)

    def largest(self) -> tuple[int, ...]:
        return max(self.components, key=len)


# ---------------------------------------------------------------------------
# text formats


def read_text(path: str) -> str:
    """Read a FILE argument; ``-`` means stdin."""
    if path == "-":
        import sys

        return sys.stdin.read()
    with open(path, encoding="ascii") as fh:
        return fh.read()


def _lines(text) -> list[str]:
    if isinstance(text, (bytes, bytearray)):
        try:
            text = text.decode("ascii")
        except UnicodeDecodeError as exc:
            raise ParseError(f"non-ASCII input: {exc}") from None
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return lines


def _parse_int(tok: str, lineno: int) -> int:
    if not tok.isdigit():
        raise ParseError(f"line {lineno}: expected a non-negative integer, got {tok!r}")
    return int(tok)


def _parse_matrix(lines: list[str], n: int) -> np.ndarray:
    if len(lines) - 1 != n:
        raise ParseError(f"expected {n} matrix rows after the header, got {len(lines) - 1}")
    a = np.zeros((n, n), dtype=np.uint8)
    for i, line in enumerate(lines[1:]):
        if len(line) != n:
            raise ParseError(f"line {i + 2}: expected {n} characters, got {len(line)}")
        for j, ch in enumerate(line):
            if ch == "1":
                a[i, j] = 1
            elif ch != "0":
                raise ParseError(f"line {i + 2}, column {j + 1}: unexpected character {ch!r}")
    return a


def _parse_edge_lines(lines: Sequence[str], first_lineno: int) -> list[tuple[int, int]]:
    edges = []
    for k, line in enumerate(lines):
        lineno = first_lineno + k
        toks = line.split()
        if not toks:
            continue
        if len(toks) != 2:
            raise ParseError(f"line {lineno}: expected 'u v', got {line!r}")
        edges.append((_parse_int(toks[0], lineno), _parse_int(toks[1], lineno)))
    return edges


def parse_tournament(text) -> Tournament:
    """Parse the adjacency-matrix text format or the edge-list variant.

    Matrix format: a header line ``n`` followed by ``n`` rows of ``0``/``1``
    characters. Edge list: an optional header ``n`` followed by ``u v`` lines
    (``u -> v``); without a header ``n`` is one more than the largest label.
    """
    lines = _lines(text)
    if not lines:
        raise ParseError("empty input")
    head = lines[0].split()
    if len(head) == 2:
        edges = _parse_edge_lines(lines, 1)
        n = 1 + max(max(e) for e in edges)
        return _tournament_from_edge_list(n, edges)
    if len(head) != 1:
        raise ParseError(f"line 1: expected the vertex count, got {lines[0]!r}")
    n = _parse_int(head[0], 1)
    if n < 1:
        raise ParseError("line 1: vertex count must be at least 1")
    body = lines[1:]
    if body and len(body[0].split()) == 2:
        return _tournament_from_edge_list(n, _parse_edge_lines(body, 2))
    if n == 1 and not body:
        return Tournament(np.zeros((1, 1), dtype=np.uint8))
    return Tournament(_parse_matrix(lines, n))


def _tournament_from_edge_list(n: int, edges: list[tuple[int, int]]) -> Tournament:
    if len(edges) != n * (n - 1) // 2:
        raise NotATournament(f"edge list has {len(edges)} edges, a tournament on {n} vertices needs {n * (n - 1) // 2}")
    return Tournament.from_edges(n, edges)


def parse_undirected(text) -> np.ndarray:
    """Parse a symmetric 0/1 matrix (same layout as the tournament format)."""
    lines = _lines(text)
    if not lines:
        raise ParseError("empty input")
    n = _parse_int(lines[0].strip(), 1)
    a = _parse_matrix(lines, n)
    if np.any(np.diagonal(a)):
        raise ParseError("undirected graph has a self-loop")
    if not np.array_equal(a, a.T):
        raise ParseError("undirected graph matrix is not symmetric")
    return a.astype(bool)


def format_tournament(g: Tournament) -> str:
    rows = ["".join("1" if x else "0" for x in row) for row in g.adj.tolist()]
    return f"{g.n}\n" + "\n".join(rows) + "\n"


def format_edges(g: Tournament) -> str:
    """Edge-list format with a vertex-count header; edges in row-major order."""
    us, vs = np.nonzero(g.adj)
    return f"{g.n}\n" + "".join(f"{u} {v}\n" for u, v in zip(us.tolist(), vs.tolist()))


# ---------------------------------------------------------------------------
# generators


def splitmix64(seed: int, count: int, start: int = 0) -> np.ndarray:
    """Outputs ``start+1 .. start+count`` of the SplitMix64 stream seeded by ``seed``.

    Output ``k`` is ``mix(seed + k * 0x9E3779B97F4A7C15 mod 2**64)`` (Steele,
    Lea & Flood 2014), so any window of the stream is computed independently.
    """
    k = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(seed & _MASK64) + k * np.uint64(GOLDEN_GAMMA)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
        z = z ^ (z >> np.uint64(31))
    return z


def random_tournament(n: int, seed: int) -> Tournament:
    """Uniform random tournament: each pair flips an independent fair coin.

    Pairs ``(i, j)`` with ``i < j`` are visited row-major; the ``t``-th pair
    (0-based) consumes SplitMix64 output ``t + 1`` and is oriented ``i -> j``
    iff the top bit of that output is set. Output is bit-identical across
    platforms for a given ``(n, seed)``.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    a = np.zeros((n, n), dtype=np.uint8)
    offset = 0
    for i in range(n - 1):
        m = n - 1 - i
        bits = (splitmix64(seed, m, offset) >> np.uint64(63)).astype(np.uint8)
        a[i, i + 1:] = bits
        a[i + 1:, i] = 1 - bits
        offset += m
    return Tournament(a, check=False)


def transitive_tournament(n: int) -> Tournament:
    """``i -> j`` whenever ``i < j``."""
    return Tournament(np.triu(np.ones((n, n), dtype=np.uint8), 1), check=False)


def rotational_tournament(n: int, jumps: Iterable[int]) -> Tournament:
    """Circulant tournament: ``i -> i + s (mod n)`` for every ``s`` in ``jumps``."""
    jumps = {s % n for s in jumps}
    a = np.zeros((n, n), dtype=np.uint8)
    for i in range(n):
        for s in jumps:
            a[i, (i + s) % n] = 1
    return Tournament(a)


# ---------------------------------------------------------------------------
# structural operations


def transpose(g: Tournament) -> Tournament:
    return Tournament(g.adj.T, check=False)


def induced(g: Tournament, vertices: Iterable[int]) -> Tournament:
    """Sub-tournament on ``vertices``, relabelled in ascending original order."""
    vs = [int(v) for v in vertices]
    if not vs:
        raise BadSubset("vertex subset must be non-empty")
    if len(set(vs)) != len(vs):
        raise BadSubset(f"duplicate vertices in {vs}")
    if min(vs) < 0 or max(vs) >= g.n:
        raise BadSubset(f"vertex out of range 0..{g.n - 1}: {vs}")
    idx = np.array(sorted(vs), dtype=np.intp)
    return Tournament(g.adj[np.ix_(idx, idx)], check=False)


def _score_order(g: Tournament) -> tuple[np.ndarray, np.ndarray]:
    scores = g.out_degrees()
    order = np.argsort(-scores, kind="stable")
    return scores, order


def scc(g: Tournament) -> SccDecomposition:
    """Strong components of a tournament in condensation order.

    Sort vertices by descending out-degree; the top ``k`` vertices form a
    dominating union of components exactly when their scores sum to
    ``C(k,2) + k(n-k)`` (Landau). The forward orientation of every
    cross-component edge is then asserted directly.
    """
    n = g.n
    scores, order = _score_order(g)
    prefix = np.cumsum(scores[order])
    k = np.arange(1, n + 1, dtype=np.int64)
    cuts = np.flatnonzero(prefix == k * (k - 1) // 2 + k * (n - k))
    components = []
    start = 0
    for c in cuts:
        components.append(tuple(sorted(int(v) for v in order[start:c + 1])))
        start = c + 1
    comp_of = np.empty(n, dtype=np.int64)
    for idx, comp in enumerate(components):
        comp_of[list(comp)] = idx
    forward = comp_of[:, None] < comp_of[None, :]
    if not np.all(g.adj[forward]):
        raise AssertionError("condensation is not transitive; adjacency is not a tournament")
    return SccDecomposition(tuple(components), tuple(int(c) for c in comp_of))


def is_transitive(g: Tournament) -> bool:
    """O(n^2): vertices sorted by score must dominate every later vertex."""
    return find_triangle(g) is None


def find_triangle(g: Tournament, vertices: Sequence[int] | None = None):
    """Return a directed triangle ``(a, b, c)`` with ``a->b->c->a``, or None.

    Vertices are sorted by out-degree (within ``vertices`` when given). The
    first backward edge ``u -> w`` with ``score(w) >= score(u)`` closes a
    triangle through any ``x`` with ``w -> x -> u``, which must exist.
    """
    if vertices is None:
        idx = np.arange(g.n)
        sub = g.adj
    else:
        idx = np.asarray(vertices, dtype=np.intp)
        sub = g.adj[np.ix_(idx, idx)]
    m = len(idx)
    if m < 3:
        return None
    scores = sub.sum(axis=1, dtype=np.int64)
    order = np.argsort(-scores, kind="stable")
    perm = sub[np.ix_(order, order)]
    back = np.tril(perm, -1)
    hits = np.flatnonzero(back.any(axis=1))
    if hits.size == 0:
        return None
    j = int(hits[0])
    i = int(np.flatnonzero(back[j])[0])
    u, w = int(order[j]), int(order[i])
    xs = np.flatnonzero(sub[w] & sub[:, u])
    x = int(xs[0])
    return int(idx[u]), int(idx[w]), int(idx[x])


def find_transitive(g: Tournament, k: int, vertices: Sequence[int] | None = None) -> list[int]:
    """Find ``k`` vertices inducing ``T_k``, listed in dominance order.

    Repeatedly takes a vertex and keeps the larger of its out- and
    in-neighbourhoods, so any ``2**(k-1)`` vertices suffice. O(k n).
    """
    cand = np.arange(g.n) if vertices is None else np.asarray(vertices, dtype=np.intp)
    if k < 1:
        raise ValueError("k must be positive")
    if len(cand) < 2 ** (k - 1):
        raise TooFewVertices(f"need {2 ** (k - 1)} vertices to guarantee T_{k}, have {len(cand)}")
    head: list[int] = []
    tail: list[int] = []
    for _ in range(k - 1):
        v = int(cand[0])
        rest = cand[1:]
        outs = rest[g.adj[v, rest] == 1]
        ins = rest[g.adj[v, rest] == 0]
        if len(outs) >= len(ins):
            head.append(v)
            cand = outs
        else:
            tail.append(v)
            cand = ins
    return head + [int(cand[0])] + tail[::-1]
