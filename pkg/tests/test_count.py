import itertools
from fractions import Fraction
from math import comb

import numpy as np
import pytest

from helpers import corpus
from tournament_census import count as count_mod
from tournament_census import exact, table1
from tournament_census.catalog import NAMES, oracle_count
from tournament_census.core import Tournament, random_tournament, rotational_tournament, transitive_tournament, transpose
from tournament_census.count import (
    K4_MATRIX,
    census_system,
    count_3,
    count_4,
    count_4_rhs,
    count_5,
    count_by_extension,
    count_H8,
    count_k,
    count_pattern,
    extension_plan,
    quasirandomness_report,
    table1_rhs,
)
from tournament_census.errors import InternalInconsistency, NoSourceOrSink, TooFewVertices

C3 = rotational_tournament(3, [1])
R5 = rotational_tournament(5, [1, 2])

# brute-force censuses, frozen
FROZEN_12_11_K4 = {"T4": 177, "X4": 177, "D": 77, "DT": 64}
FROZEN_12_13_K5 = {"T5": 128, "H1": 23, "H1T": 40, "H2": 63, "H2T": 134, "H3": 39,
                   "H4": 92, "H5": 81, "H6": 25, "H7": 67, "H8": 83, "R5": 17}
FROZEN_10_4_K5 = {"T5": 49, "H1": 22, "H1T": 4, "H2": 69, "H2T": 12, "H3": 20,
                  "H4": 15, "H5": 16, "H6": 4, "H7": 24, "H8": 15, "R5": 2}
FROZEN_64_5_K4 = {"T4": 235987, "X4": 240562, "D": 79291, "DT": 79536}


def cofactor_det(m):
    """Laplace expansion along the first row (independent of the Bareiss routine)."""
    m = [list(r) for r in m]
    if len(m) == 1:
        return m[0][0]
    return sum(
        (-1) ** j * m[0][j] * cofactor_det([row[:j] + row[j + 1:] for row in m[1:]])
        for j in range(len(m))
        if m[0][j]
    )


class TestCountThree:
    def test_examples(self):
        assert count_3(C3).as_dict() == {"T3": 0, "C3": 1}
        assert count_3(transitive_tournament(5)).as_dict() == {"T3": 10, "C3": 0}
        assert count_3(R5).as_dict() == {"T3": 5, "C3": 5}

    def test_too_few(self):
        with pytest.raises(TooFewVertices):
            count_3(transitive_tournament(2))


class TestFourVertexSystem:
    def test_matrix_lower_triangular_nonsingular(self):
        m = [list(r) for r in K4_MATRIX]
        assert all(m[i][j] == 0 for i in range(4) for j in range(i + 1, 4))
        assert exact.determinant(m) != 0

    def test_third_sum_counts_each_d_three_times(self):
        # sum over edges of d+(u,v) p(u,v) = #T4 + 3 #D (not #T4 + #D)
        for g in corpus(40, 4, 20, seed0=500):
            o = oracle_count(g, 4)
            third = count_4_rhs(g)[2]
            assert third == o["T4"] + 3 * o["D"]

    def test_unit_coefficient_variant_fails(self):
        # with coefficient 1 the system is inconsistent with brute force
        g = random_tournament(12, 11)
        o = oracle_count(g, 4)
        assert count_4_rhs(g)[2] != o["T4"] + o["D"]

    def test_examples(self):
        assert count_4(transitive_tournament(6)).as_dict() == {"T4": 15, "X4": 0, "D": 0, "DT": 0}
        assert count_4(R5) == oracle_count(R5, 4)
        assert count_4(random_tournament(12, 11)).as_dict() == FROZEN_12_11_K4

    def test_frozen_n64(self):
        assert count_4(random_tournament(64, 5)).as_dict() == FROZEN_64_5_K4

    @pytest.mark.parametrize("g", corpus(60, 4, 40, seed0=1000), ids=lambda g: f"n{g.n}")
    def test_matches_oracle(self, g):
        assert count_4(g) == oracle_count(g, 4)

    def test_residuals_zero(self):
        g = random_tournament(15, 2)
        sys4 = census_system(g, 4)
        assert sys4.residuals(count_4(g)) == [0, 0, 0, 0]


class TestTable1:
    def test_shape(self):
        assert len(table1.COEFFICIENTS) == 20
        assert all(len(r) == 12 for r in table1.COEFFICIENTS)

    def test_rank_ten(self):
        assert exact.rank(table1.COEFFICIENTS) == 10

    def test_unknown_columns_rank_five(self):
        # the six columns without a source or sink
        cols = [NAMES[5].index(n) for n in ("H4", "H5", "H6", "H7", "H8", "R5")]
        sub = [[row[c] for c in cols] for row in table1.COEFFICIENTS]
        assert exact.rank(sub) == 5

    def test_solve_block_determinant(self):
        cols = [NAMES[5].index(n) for n in table1.SOLVE_COLUMNS]
        sub = [[table1.COEFFICIENTS[r - 1][c] for c in cols] for r in table1.SOLVE_ROWS]
        assert cofactor_det(sub) == 5
        assert exact.determinant(sub) == 5

    def test_descriptions(self):
        assert table1.describe(1) == "C(dplus,3)"
        assert table1.describe(7) == "C(dplus,2)*puv"
        assert table1.describe(18) == "dplus*dminus*pvu"

    def test_r5_rhs(self):
        rhs = table1_rhs(R5)
        for r, poly in enumerate(table1.POLYNOMIALS):
            if any(k == 3 for _, k in poly):
                assert rhs[r] == 0
        assert rhs[13] == 5 and rhs[17] == 5

    def test_t5_row_one(self):
        assert table1_rhs(transitive_tournament(5))[0] == 1

    def test_transpose_swaps_rows_one_two(self):
        g = random_tournament(11, 3)
        assert table1_rhs(transpose(g))[0] == table1_rhs(g)[1]

    @pytest.mark.parametrize("g", corpus(25, 5, 12, seed0=200), ids=lambda g: f"n{g.n}")
    def test_rows_hold_against_oracle(self, g):
        counts = oracle_count(g, 5)
        sys5 = census_system(g, 5)
        assert sys5.residuals(counts) == [0] * 20


class TestExtension:
    def test_t5_on_t7(self):
        assert count_by_extension(transitive_tournament(7), "T5") == 21

    def test_h1_remainder_is_d(self):
        assert extension_plan("H1") == ("out", "D")

    def test_plans(self):
        plans = {name: extension_plan(name) for name in count_mod.EXTENSION_PATTERNS}
        assert plans["T5"] == ("out", "T4")
        assert plans["H1T"] == ("in", "DT")

    @pytest.mark.parametrize("name", ["H4", "H5", "H6", "H7", "H8", "R5"])
    def test_ineligible(self, name):
        with pytest.raises(NoSourceOrSink):
            extension_plan(name)

    def test_not_five_vertex(self):
        with pytest.raises(ValueError):
            count_by_extension(random_tournament(8, 0), "D")

    @pytest.mark.parametrize("name", count_mod.EXTENSION_PATTERNS)
    def test_matches_oracle(self, name):
        g = random_tournament(10, 4)
        assert count_by_extension(g, name) == oracle_count(g, 5)[name]


class TestH8:
    def test_h8_itself(self, reps):
        assert count_H8(reps["H8"]) == 1

    def test_t5(self):
        assert count_H8(transitive_tournament(5)) == 0

    def test_matches_oracle(self):
        g = random_tournament(10, 4)
        assert count_H8(g) == oracle_count(g, 5)["H8"]


class TestCountFive:
    def test_t8(self):
        cv = count_5(transitive_tournament(8))
        assert cv["T5"] == 56 and cv.total == 56

    def test_r5(self):
        assert count_5(R5).as_dict() == {**dict.fromkeys(NAMES[5], 0), "R5": 1}

    def test_frozen(self):
        assert count_5(random_tournament(12, 13)).as_dict() == FROZEN_12_13_K5
        assert count_5(random_tournament(10, 4)).as_dict() == FROZEN_10_4_K5

    @pytest.mark.parametrize("g", corpus(30, 5, 24, seed0=3000), ids=lambda g: f"n{g.n}")
    def test_matches_oracle(self, g):
        assert count_5(g) == oracle_count(g, 5)

    def test_threads_identical(self):
        g = random_tournament(40, 8)
        assert count_5(g, workers=4) == count_5(g)

    def test_corrupted_row_detected(self, monkeypatch):
        bad = list(table1.COEFFICIENTS)
        bad[0] = (2,) + bad[0][1:]
        monkeypatch.setattr(table1, "COEFFICIENTS", tuple(bad))
        with pytest.raises(InternalInconsistency):
            count_5(random_tournament(12, 13))

    def test_non_integer_solution_detected(self):
        with pytest.raises(InternalInconsistency):
            count_mod._as_count(Fraction(1, 5), "R5")
        with pytest.raises(InternalInconsistency):
            count_mod._as_count(Fraction(-1), "R5")


class TestDualities:
    @pytest.mark.parametrize("seed", range(8))
    def test_transpose(self, seed):
        g = random_tournament(9 + seed, seed)
        gt = transpose(g)
        assert count_4(gt) == count_4(g).transposed()
        assert count_5(gt) == count_5(g).transposed()


class TestDispatch:
    def test_count_k(self):
        g = random_tournament(9, 1)
        for k in (3, 4, 5):
            assert count_k(g, k) == oracle_count(g, k)
        with pytest.raises(ValueError):
            count_k(g, 6)

    def test_count_pattern(self, catalog):
        g = random_tournament(10, 4)
        for k in (3, 4, 5):
            o = oracle_count(g, k)
            for name in NAMES[k]:
                assert count_pattern(g, name) == o[name]
        assert count_pattern(transitive_tournament(3), "H8") == 0


class TestQuasirandomness:
    def test_t5(self):
        assert quasirandomness_report(transitive_tournament(5)) == (5, Fraction(15, 8))

    def test_random_near_expectation(self):
        # statistical smoke check, not a classification threshold
        t4, expected = quasirandomness_report(random_tournament(200, 1))
        assert 0.9 <= t4 / expected <= 1.1

    def test_c3_blowup_is_not_average(self):
        # three transitive blocks arranged cyclically; the T4 count sits
        # well above the uniform-model mean
        m = 6
        n = 3 * m
        a = np.zeros((n, n), dtype=np.uint8)
        for i, j in itertools.permutations(range(n), 2):
            gi, gj = i // m, j // m
            a[i, j] = (i < j) if gi == gj else (gj - gi) % 3 == 1
        t4, expected = quasirandomness_report(Tournament(a))
        assert t4 == count_4(Tournament(a))["T4"]
        assert t4 / expected > 1.2
        assert expected == Fraction(3, 8) * comb(n, 4)
