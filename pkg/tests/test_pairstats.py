import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import c4_loop, pair_stats_loop
from tournament_census.catalog import oracle_count
from tournament_census.core import parse_tournament, random_tournament, transitive_tournament
from tournament_census.pairstats import (
    bipartite_c4_count,
    c4_from_biadjacency,
    compute_pair_stats,
    edge_stats,
    matmul01,
    sum_binom,
)

C3 = parse_tournament("3\n010\n001\n100\n")


class TestPairStats:
    def test_c3_edge(self):
        st_ = compute_pair_stats(C3)
        assert st_.pair(0, 1) == (0, 0, 0, 1)

    @pytest.mark.parametrize("seed", range(12))
    def test_matches_triple_loop(self, seed):
        g = random_tournament(3 + 3 * seed, seed)  # n up to 36
        dp, dm, p = pair_stats_loop(g)
        s = compute_pair_stats(g)
        assert np.array_equal(s.dplus, dp)
        assert np.array_equal(s.dminus, dm)
        assert np.array_equal(s.p_uv, p)
        assert np.array_equal(s.p_vu, p.T)

    def test_n40(self):
        g = random_tournament(40, 99)
        dp, dm, p = pair_stats_loop(g)
        s = compute_pair_stats(g)
        assert np.array_equal(s.dplus, dp) and np.array_equal(s.dminus, dm) and np.array_equal(s.p, p)

    def test_transitive_common_out(self):
        n = 7
        s = compute_pair_stats(transitive_tournament(n))
        for u in range(n):
            for v in range(u + 1, n):
                assert s.dplus[u, v] == n - v - 1
                assert s.dminus[u, v] == u
                assert s.p[u, v] == v - u - 1

    def test_partition_identity_n100(self):
        g = random_tournament(100, 2)
        s = compute_pair_stats(g)
        total = s.dplus + s.dminus + s.p_uv + s.p_vu
        off = ~np.eye(100, dtype=bool)
        assert np.all(total[off] == 98)

    def test_symmetry(self):
        s = compute_pair_stats(random_tournament(30, 1))
        assert np.array_equal(s.dplus, s.dplus.T)
        assert np.array_equal(s.dminus, s.dminus.T)

    def test_read_only(self):
        s = compute_pair_stats(random_tournament(5, 1))
        with pytest.raises(ValueError):
            s.dplus[0, 1] = 3


class TestEdgeSums:
    @pytest.mark.parametrize("seed", range(10))
    def test_triangle_identities(self, seed):
        g = random_tournament(5 + seed * 3, seed)
        es = edge_stats(g)
        o = oracle_count(g, 3)
        assert int(es.puv.sum()) == o["T3"]
        assert int(es.pvu.sum()) == 3 * o["C3"]
        assert int(es.dplus.sum()) == o["T3"]
        assert int(es.dminus.sum()) == o["T3"]

    def test_sum_binom_python_ints(self):
        x = np.full(10, 2**20, dtype=np.int64)
        assert sum_binom([(x, 3)]) == 10 * ((2**20) * (2**20 - 1) * (2**20 - 2) // 6)
        assert isinstance(sum_binom([(x, 1)]), int)

    def test_sum_binom_products(self):
        x = np.array([3, 4, 5])
        y = np.array([1, 2, 0])
        assert sum_binom([(x, 2), (y, 1)]) == 3 * 1 + 6 * 2 + 10 * 0
        assert sum_binom([]) == 0


class TestMatmul:
    def test_exact(self):
        rng = np.random.default_rng(0)
        a = (rng.random((50, 70)) < 0.5).astype(np.uint8)
        b = (rng.random((70, 30)) < 0.5).astype(np.uint8)
        assert np.array_equal(matmul01(a, b), a.astype(np.int64) @ b.astype(np.int64))


class TestFourCycles:
    def test_k22(self):
        assert bipartite_c4_count([0, 1], [2, 3], [(0, 2), (0, 3), (1, 2), (1, 3)]) == 1

    def test_k33(self):
        edges = [(u, w) for u in range(3) for w in range(3, 6)]
        assert bipartite_c4_count(range(3), range(3, 6), edges) == 9

    def test_tree(self):
        assert bipartite_c4_count([0, 1, 2], [3, 4], [(0, 3), (1, 3), (1, 4), (2, 4)]) == 0

    def test_overlap_rejected(self):
        with pytest.raises(ValueError):
            bipartite_c4_count([0, 1], [1, 2], [])

    @settings(max_examples=60)
    @given(st.integers(0, 7), st.integers(0, 7), st.integers(0, 2**32 - 1))
    def test_matches_enumeration(self, p, q, seed):
        rng = np.random.default_rng(seed)
        m = (rng.random((p, q)) < 0.6).astype(np.uint8)
        left = list(range(p))
        right = list(range(p, p + q))
        edges = [(i, p + j) for i in range(p) for j in range(q) if m[i, j]]
        assert c4_from_biadjacency(m) == c4_loop(left, right, edges)
        assert bipartite_c4_count(left, right, edges) == c4_loop(left, right, edges)
