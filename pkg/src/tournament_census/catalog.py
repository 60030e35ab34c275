"""Isomorphism machinery for tournaments on at most seven vertices.

Canonical codes are brute-force minima over vertex permutations of the
row-major adjacency bit string. The named three-, four- and five-vertex
patterns live in a :class:`Catalog`; five-vertex names are bound to classes
by :func:`calibrate_catalog` and frozen in :mod:`._frozen`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import table1
from .core import Tournament, find_triangle, random_tournament, transpose
from .errors import CalibrationAmbiguous, TooLarge
from .pairstats import edge_stats

NAMES3 = ("T3", "C3")
NAMES4 = ("T4", "X4", "D", "DT")
NAMES5 = table1.NAMES5
NAMES = {3: NAMES3, 4: NAMES4, 5: NAMES5}

TRANSPOSE_NAME = {name: name for k in NAMES for name in NAMES[k]}
TRANSPOSE_NAME.update({"D": "DT", "DT": "D", "H1": "H1T", "H1T": "H1", "H2": "H2T", "H2T": "H2"})

MAX_CANON = 7
ORACLE_CAPS = {3: 512, 4: 256, 5: 64}


@dataclass(frozen=True)
class CountVector:
    """Exact counts of every isomorphism class on ``k`` vertices."""

    k: int
    counts: Mapping[str, int]

    def __getitem__(self, name: str) -> int:
        return self.counts[name]

    def __iter__(self):
        return iter(NAMES[self.k])

    def items(self):
        return [(name, self.counts[name]) for name in NAMES[self.k]]

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def as_dict(self) -> dict[str, int]:
        return {name: int(self.counts[name]) for name in NAMES[self.k]}

    def transposed(self) -> "CountVector":
        return CountVector(self.k, {TRANSPOSE_NAME[name]: c for name, c in self.counts.items()})

    def __eq__(self, other):
        if not isinstance(other, CountVector):
            return NotImplemented
        return self.k == other.k and self.as_dict() == other.as_dict()


# ---------------------------------------------------------------------------
# labelled codes and canonical forms


def _pairs(n: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(n), 2))


def labeled_code(adj: np.ndarray) -> int:
    """Bit ``b`` is set iff the ``b``-th pair ``i < j`` is oriented ``i -> j``."""
    code = 0
    for b, (i, j) in enumerate(_pairs(adj.shape[0])):
        if adj[i, j]:
            code |= 1 << b
    return code


def from_labeled_code(code: int, n: int) -> Tournament:
    a = np.zeros((n, n), dtype=np.uint8)
    for b, (i, j) in enumerate(_pairs(n)):
        if code >> b & 1:
            a[i, j] = 1
        else:
            a[j, i] = 1
    return Tournament(a, check=False)


@lru_cache(maxsize=None)
def _perms(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.intp).reshape(-1, n)


def _permuted_rows(adj: np.ndarray) -> np.ndarray:
    n = adj.shape[0]
    p = _perms(n)
    return adj[p[:, :, None], p[:, None, :]].reshape(len(p), n * n)


def _bits_to_int(bits: Iterable[int]) -> int:
    out = 0
    for b in bits:
        out = (out << 1) | int(b)
    return out


@lru_cache(maxsize=None)
def _canonical_table(n: int) -> np.ndarray:
    """Labelled code -> canonical code integer, for every tournament on ``n <= 5`` vertices."""
    m = len(_pairs(n))
    codes = np.arange(1 << m)
    adj = np.zeros((1 << m, n, n), dtype=np.int64)
    for b, (i, j) in enumerate(_pairs(n)):
        bit = (codes >> b) & 1
        adj[:, i, j] = bit
        adj[:, j, i] = 1 - bit
    p = _perms(n)
    permuted = adj[:, p[:, :, None], p[:, None, :]].reshape(1 << m, len(p), n * n)
    weights = np.int64(1) << np.arange(n * n - 1, -1, -1, dtype=np.int64)
    return (permuted @ weights).min(axis=1)


def _check_canon_size(t: Tournament) -> None:
    if t.n > MAX_CANON:
        raise TooLarge(f"brute-force canonical form supports n <= {MAX_CANON}, got {t.n}")


def canonical_code(t: Tournament) -> int:
    """Canonical code as an integer (the bit string read MSB first)."""
    _check_canon_size(t)
    if t.n <= 5:
        return int(_canonical_table(t.n)[labeled_code(t.adj)])
    rows = _permuted_rows(t.adj)
    best = np.lexsort(rows.T[::-1])[0]
    return _bits_to_int(rows[best])


def canonical_form(t: Tournament) -> str:
    """Lexicographically smallest row-major adjacency bit string over all relabellings."""
    return format(canonical_code(t), f"0{t.n * t.n}b")


def tournament_from_canonical(code: int, n: int) -> Tournament:
    bits = format(code, f"0{n * n}b")
    a = np.array([int(c) for c in bits], dtype=np.uint8).reshape(n, n)
    return Tournament(a)


def is_isomorphic(s: Tournament, t: Tournament) -> bool:
    return s.n == t.n and canonical_code(s) == canonical_code(t)


def automorphism_order(t: Tournament) -> int:
    _check_canon_size(t)
    rows = _permuted_rows(t.adj)
    return int(np.all(rows == t.adj.reshape(1, -1), axis=1).sum())


def _flip(adj: np.ndarray, pairs: Sequence[tuple[int, int]], mask: int) -> np.ndarray:
    b = adj.copy()
    for bit, (i, j) in enumerate(pairs):
        if mask >> bit & 1:
            b[i, j], b[j, i] = b[j, i], b[i, j]
    return b


def is_signature(t: Tournament, r: Iterable[int]) -> bool:
    """True iff reorienting any nonempty set of edges avoiding ``r`` breaks isomorphism."""
    rset = set(int(v) for v in r)
    outside = [(i, j) for i, j in _pairs(t.n) if i not in rset and j not in rset]
    if t.n > 6 or len(outside) > 12:
        raise TooLarge(f"signature check would enumerate 2^{len(outside)} reorientations")
    target = canonical_code(t)
    for mask in range(1, 1 << len(outside)):
        if canonical_code(Tournament(_flip(t.adj, outside, mask), check=False)) == target:
            return False
    return True


def signature_size(t: Tournament) -> tuple[int, tuple[int, ...]]:
    """Smallest signature: ``(size, witness set)``, by ascending-size subset search."""
    if t.n > 5:
        raise TooLarge(f"signature search supports n <= 5, got {t.n}")
    for size in range(t.n + 1):
        for r in itertools.combinations(range(t.n), size):
            if is_signature(t, r):
                return size, tuple(r)
    raise AssertionError("the full vertex set is always a signature")


# ---------------------------------------------------------------------------
# structural predicates used to name classes


def _out_degrees(t: Tournament) -> tuple[int, ...]:
    return tuple(sorted((int(d) for d in t.out_degrees()), reverse=True))


def _is_c3(t: Tournament, vs: Sequence[int]) -> bool:
    return find_triangle(t, list(vs)) is not None


def _has_pair_over_c3(t: Tournament) -> bool:
    a = t.adj
    for u, v in itertools.permutations(range(t.n), 2):
        rest = [w for w in range(t.n) if w not in (u, v)]
        if a[u, v] and all(a[u, w] and a[v, w] for w in rest) and _is_c3(t, rest):
            return True
    return False


def _has_source_sink_over_c3(t: Tournament) -> bool:
    deg = t.out_degrees()
    n = t.n
    src = [v for v in range(n) if deg[v] == n - 1]
    snk = [v for v in range(n) if deg[v] == 0]
    if not src or not snk:
        return False
    rest = [w for w in range(n) if w not in (src[0], snk[0])]
    return _is_c3(t, rest)


def _has_h8_centre(t: Tournament) -> bool:
    a = t.adj
    for e in range(t.n):
        outs = np.flatnonzero(a[e])
        ins = np.flatnonzero(a[:, e])
        if len(outs) == 2 and len(ins) == 2 and all(a[x, y] for x in outs for y in ins):
            return True
    return False


def _name_small(t: Tournament) -> str:
    n = t.n
    transitive = find_triangle(t) is None
    if n == 3:
        return "T3" if transitive else "C3"
    if n == 4:
        if transitive:
            return "T4"
        deg = t.out_degrees()
        if (deg == 3).any():
            return "D"
        if (deg == 0).any():
            return "DT"
        return "X4"
    raise ValueError(n)


# ---------------------------------------------------------------------------
# catalog


@dataclass(frozen=True)
class PatternInfo:
    name: str
    rep: Tournament
    code: int
    aut: int
    out_degrees: tuple[int, ...]
    signature: tuple[int, ...]

    @property
    def k(self) -> int:
        return self.rep.n

    @property
    def signature_size(self) -> int:
        return len(self.signature)

    @property
    def code_hex(self) -> str:
        return format(self.code, "x")

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "k": self.k,
            "code": self.code_hex,
            "aut": self.aut,
            "out_degrees": list(self.out_degrees),
            "signature_size": self.signature_size,
            "signature": list(self.signature),
        }


@dataclass(frozen=True)
class Catalog:
    patterns: Mapping[str, PatternInfo]
    _by_code: Mapping[tuple[int, int], str] = field(repr=False, compare=False)
    _lookups: Mapping[int, np.ndarray] = field(repr=False, compare=False)

    @classmethod
    def from_codes(cls, codes: Mapping[str, int]) -> "Catalog":
        patterns = {}
        by_code = {}
        for k in (3, 4, 5):
            for name in NAMES[k]:
                code = codes[name]
                rep = tournament_from_canonical(code, k)
                if canonical_code(rep) != code:
                    raise CalibrationAmbiguous(f"{name}: code {code:x} is not a canonical form")
                patterns[name] = PatternInfo(
                    name=name,
                    rep=rep,
                    code=code,
                    aut=automorphism_order(rep),
                    out_degrees=_out_degrees(rep),
                    signature=signature_size(rep)[1],
                )
                by_code[(k, code)] = name
        for k in (3, 4, 5):
            if len({patterns[name].code for name in NAMES[k]}) != len(NAMES[k]):
                raise CalibrationAmbiguous(f"duplicate classes among the k={k} names")
        lookups = {}
        for k in (3, 4, 5):
            index = {patterns[name].code: i for i, name in enumerate(NAMES[k])}
            lookups[k] = np.array([index[int(c)] for c in _canonical_table(k)], dtype=np.int64)
        return cls(patterns, by_code, lookups)

    def __getitem__(self, name: str) -> PatternInfo:
        return self.patterns[name]

    def names(self, k: int) -> tuple[str, ...]:
        return NAMES[k]

    def classify(self, t: Tournament) -> str:
        if t.n not in NAMES:
            raise ValueError(f"classify needs 3 <= n <= 5, got {t.n}")
        return self._by_code[(t.n, canonical_code(t))]

    def codes(self) -> dict[str, int]:
        return {name: info.code for name, info in self.patterns.items()}

    def label_lookup(self, k: int) -> np.ndarray:
        """Labelled ``k``-vertex code -> index into ``NAMES[k]``."""
        return self._lookups[k]


def _five_vertex_classes() -> list[int]:
    return sorted({int(c) for c in _canonical_table(5)})


def _unique_class(classes: Sequence[int], pred, label: str) -> int:
    hits = [c for c in classes if pred(tournament_from_canonical(c, 5))]
    if len(hits) != 1:
        raise CalibrationAmbiguous(f"{label}: {len(hits)} classes satisfy the defining property")
    return hits[0]


def _class_counts5(g: Tournament) -> dict[int, int]:
    table = _canonical_table(5)
    counts: dict[int, int] = {}
    for combo in itertools.combinations(range(g.n), 5):
        idx = np.array(combo)
        code = int(table[labeled_code(g.adj[np.ix_(idx, idx)])])
        counts[code] = counts.get(code, 0) + 1
    return counts


def calibrate_catalog(instances: int = 20, n: int = 9, seed: int = 0) -> Catalog:
    """Bind every pattern name to an isomorphism class from first principles.

    Three- and four-vertex names and T5, R5, H1, H1T, H3, H8 follow from
    structural properties. The remaining six five-vertex names are fixed by
    the transpose and out-degree constraints together with exact agreement
    of all twenty edge-sum table identities on ``instances`` random tournaments.
    """
    codes: dict[str, int] = {}
    for k in (3, 4):
        for code in sorted({int(c) for c in _canonical_table(k)}):
            name = _name_small(tournament_from_canonical(code, k))
            if name in codes:
                raise CalibrationAmbiguous(f"{name} matches two classes")
            codes[name] = code
    if len(codes) != 6:
        raise CalibrationAmbiguous("expected 2 + 4 classes on three and four vertices")

    classes = _five_vertex_classes()
    if len(classes) != 12:
        raise CalibrationAmbiguous(f"found {len(classes)} five-vertex classes, expected 12")

    def tr(code: int) -> int:
        return canonical_code(transpose(tournament_from_canonical(code, 5)))

    def deg(code: int) -> tuple[int, ...]:
        return _out_degrees(tournament_from_canonical(code, 5))

    codes["T5"] = _unique_class(classes, lambda t: find_triangle(t) is None, "T5")
    codes["R5"] = _unique_class(classes, lambda t: set(t.out_degrees().tolist()) == {2}, "R5")
    codes["H1"] = _unique_class(classes, _has_pair_over_c3, "H1")
    codes["H1T"] = tr(codes["H1"])
    codes["H3"] = _unique_class(classes, _has_source_sink_over_c3, "H3")
    codes["H8"] = _unique_class(classes, _has_h8_centre, "H8")

    free_names = ("H2", "H2T", "H4", "H5", "H6", "H7")
    free_classes = [c for c in classes if c not in codes.values()]
    if len(free_classes) != len(free_names):
        raise CalibrationAmbiguous("structural names do not pick six distinct classes")

    rng_seeds = [seed + i for i in range(instances)]
    samples = []
    for s in rng_seeds:
        g = random_tournament(n, s)
        samples.append((_class_counts5(g), table1.evaluate(edge_stats(g))))

    survivors = []
    for perm in itertools.permutations(free_classes):
        cand = dict(zip(free_names, perm))
        if cand["H2T"] != tr(cand["H2"]):
            continue
        if deg(cand["H4"]) != deg(cand["H5"]):
            continue
        if not (deg(cand["H6"]) == deg(cand["H7"]) == deg(codes["H8"])):
            continue
        full = {**codes, **cand}
        ok = all(
            sum(coef * counts.get(full[name], 0) for name, coef in zip(NAMES5, row)) == rhs[r]
            for counts, rhs in samples
            for r, row in enumerate(table1.COEFFICIENTS)
        )
        if ok:
            survivors.append(cand)
    if len(survivors) != 1:
        raise CalibrationAmbiguous(f"{len(survivors)} name assignments satisfy every constraint")
    codes.update(survivors[0])
    return Catalog.from_codes(codes)


@lru_cache(maxsize=1)
def get_catalog() -> Catalog:
    """The frozen catalog (re-derived by :func:`calibrate_catalog` in the test suite)."""
    from ._frozen import FROZEN_CODES

    return Catalog.from_codes({name: int(h, 16) for name, h in FROZEN_CODES.items()})


def classify(t: Tournament) -> str:
    return get_catalog().classify(t)


def render_frozen_module(catalog: Catalog) -> str:
    lines = [
        '"""Generated by ``census calibrate --emit-module``; do not edit by hand."""',
        "",
        "FROZEN_CODES = {",
    ]
    for k in (3, 4, 5):
        for name in NAMES[k]:
            lines.append(f'    "{name}": "{catalog[name].code_hex}",')
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# brute-force oracle


@lru_cache(maxsize=64)
def _base_combos(m: int, j: int) -> np.ndarray:
    flat = np.fromiter(
        itertools.chain.from_iterable(itertools.combinations(range(m), j)),
        dtype=np.int32,
        count=comb(m, j) * j,
    )
    return flat.reshape(-1, j)


def _subset_codes(adj: np.ndarray, combos: np.ndarray) -> np.ndarray:
    k = combos.shape[1]
    code = np.zeros(len(combos), dtype=np.int64)
    for b, (i, j) in enumerate(_pairs(k)):
        code |= adj[combos[:, i], combos[:, j]].astype(np.int64) << b
    return code


def oracle_count(g: Tournament, k: int, catalog: Catalog | None = None) -> CountVector:
    """Classify every ``k``-subset of ``g`` and tally the classes."""
    if k not in NAMES:
        raise ValueError(f"k must be 3, 4 or 5, got {k}")
    if g.n > ORACLE_CAPS[k]:
        raise TooLarge(f"oracle for k={k} is capped at n <= {ORACLE_CAPS[k]}, got {g.n}")
    catalog = catalog or get_catalog()
    lookup = catalog.label_lookup(k)
    tally = np.zeros(len(NAMES[k]), dtype=np.int64)
    adj = g.adj
    for first in range(g.n - k + 1):
        rest = _base_combos(g.n - first - 1, k - 1) + (first + 1)
        combos = np.empty((len(rest), k), dtype=np.int32)
        combos[:, 0] = first
        combos[:, 1:] = rest
        tally += np.bincount(lookup[_subset_codes(adj, combos)], minlength=len(NAMES[k]))
    return CountVector(k, {name: int(c) for name, c in zip(NAMES[k], tally)})
