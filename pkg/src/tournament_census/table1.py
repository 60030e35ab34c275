"""The twenty edge-sum identities for five-vertex tournament counts.

Each row pairs an integer coefficient vector over the twelve five-vertex
classes with an edge polynomial ``sum over edges (u, v) of prod C(stat, m)``
where ``stat`` is one of the pair statistics ``dplus``, ``dminus``, ``puv``
(= p(u, v)) and ``pvu`` (= p(v, u)).
"""
from __future__ import annotations

from .pairstats import EdgeStats, sum_binom

NAMES5 = ("T5", "H1", "H1T", "H2", "H2T", "H3", "H4", "H5", "H6", "H7", "H8", "R5")

# (coefficients by name, ((stat, binomial order), ...)); rows are 1-based in docs.
ROWS = (
    ({"T5": 1, "H1": 1}, (("dplus", 3),)),
    ({"T5": 1, "H1T": 1}, (("dminus", 3),)),
    ({"H4": 1, "H6": 1}, (("pvu", 3),)),
    ({"T5": 1, "H3": 1}, (("puv", 3),)),
    ({"T5": 1, "H2T": 1, "H4": 1, "H8": 1}, (("dplus", 2), ("dminus", 1))),
    ({"T5": 1, "H2": 1, "H4": 1, "H8": 1}, (("dminus", 2), ("dplus", 1))),
    ({"T5": 1, "H2": 2, "H3": 3}, (("dplus", 2), ("puv", 1))),
    ({"H1T": 3, "H2T": 1, "H4": 1, "H5": 1}, (("dplus", 2), ("pvu", 1))),
    ({"T5": 1, "H2T": 2, "H3": 3}, (("dminus", 2), ("puv", 1))),
    ({"H1": 3, "H2": 1, "H4": 1, "H5": 1}, (("dminus", 2), ("pvu", 1))),
    ({"H4": 2, "H5": 1, "H8": 1}, (("puv", 2), ("pvu", 1))),
    ({"T5": 1, "H1T": 3, "H2T": 2}, (("puv", 2), ("dminus", 1))),
    ({"T5": 1, "H1": 3, "H2": 2}, (("puv", 2), ("dplus", 1))),
    ({"H7": 1, "H8": 2, "R5": 5}, (("pvu", 2), ("puv", 1))),
    ({"H2": 1, "H5": 1, "H7": 1, "H8": 1}, (("pvu", 2), ("dminus", 1))),
    ({"H2T": 1, "H5": 1, "H7": 1, "H8": 1}, (("pvu", 2), ("dplus", 1))),
    ({"T5": 1, "H1": 3, "H1T": 3, "H4": 1, "H5": 3, "H7": 1}, (("dplus", 1), ("dminus", 1), ("puv", 1))),
    ({"H2": 1, "H2T": 1, "H3": 3, "H6": 3, "H7": 2, "H8": 1, "R5": 5}, (("dplus", 1), ("dminus", 1), ("pvu", 1))),
    ({"H2T": 2, "H4": 1, "H5": 1, "H6": 3, "H7": 2, "H8": 1}, (("dplus", 1), ("puv", 1), ("pvu", 1))),
    ({"H2": 2, "H4": 1, "H5": 1, "H6": 3, "H7": 2, "H8": 1}, (("dminus", 1), ("puv", 1), ("pvu", 1))),
)

COEFFICIENTS = tuple(tuple(coef.get(name, 0) for name in NAMES5) for coef, _ in ROWS)
POLYNOMIALS = tuple(poly for _, poly in ROWS)

# 1-based rows whose restriction to the columns below is square and nonsingular.
SOLVE_ROWS = (3, 5, 8, 15, 18)
SOLVE_COLUMNS = ("H4", "H5", "H6", "H7", "R5")


def describe(row: int) -> str:
    """Human-readable right-hand side of a 1-based row, e.g. ``C(dplus,2)*pvu``."""
    parts = []
    for stat, k in POLYNOMIALS[row - 1]:
        parts.append(stat if k == 1 else f"C({stat},{k})")
    return "*".join(parts)


def evaluate(es: EdgeStats) -> list[int]:
    """All twenty edge sums for the given per-edge statistics."""
    return [sum_binom((getattr(es, stat), k) for stat, k in poly) for poly in POLYNOMIALS]
