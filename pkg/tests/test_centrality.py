from __future__ import annotations

import numpy as np
import pytest

from fairseed.centrality import bfs_layers, closeness, harmonic, multi_source_distance, ppr
from fairseed.graph import Graph

from conftest import floyd_warshall, random_test_graph


class TestBfs:
    def test_p3_layers(self, fixtures):
        dist, layers = bfs_layers(fixtures["p3"], 0)
        assert [l.tolist() for l in layers] == [[0], [1], [2]]
        assert dist.tolist() == [0, 1, 2]

    def test_k3_layers(self, fixtures):
        _, layers = bfs_layers(fixtures["k3"], 0)
        assert [l.tolist() for l in layers] == [[0], [1, 2]]

    def test_star_from_leaf(self, fixtures):
        _, layers = bfs_layers(fixtures["star3"], 1)
        assert [l.tolist() for l in layers] == [[1], [0], [2, 3]]

    def test_unreachable_is_inf(self):
        g = Graph.from_edges([(0, 1)], n=3)
        dist, _ = bfs_layers(g, 0)
        assert np.isinf(dist[2])


class TestMultiSource:
    def test_single_source_path(self, fixtures):
        assert multi_source_distance(fixtures["p5"], [0]).tolist() == [0, 1, 2, 3, 4]

    def test_two_sources(self, fixtures):
        assert multi_source_distance(fixtures["p5"], [0, 4]).tolist() == [0, 1, 2, 1, 0]

    def test_other_component_inf(self):
        g = Graph.from_edges([(0, 1), (2, 3)], n=4)
        dist = multi_source_distance(g, [0])
        assert np.isinf(dist[2]) and np.isinf(dist[3])

    def test_empty_sources_rejected(self, fixtures):
        with pytest.raises(ValueError):
            multi_source_distance(fixtures["p3"], [])

    def test_equals_min_over_single_sources(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            g = random_test_graph(rng, max_n=30)
            sources = sorted(set(rng.integers(0, g.n, size=3).tolist()))
            combined = multi_source_distance(g, sources)
            singles = np.min([multi_source_distance(g, [s]) for s in sources], axis=0)
            assert np.array_equal(combined, singles)


class TestCentralityScores:
    def test_closeness_hand_values(self, fixtures):
        assert closeness(fixtures["p3"]) == pytest.approx([2 / 3, 1.0, 2 / 3])
        assert closeness(fixtures["k3"]) == pytest.approx([1.0, 1.0, 1.0])
        assert closeness(fixtures["star3"]) == pytest.approx([1.0, 3 / 5, 3 / 5, 3 / 5])

    def test_harmonic_hand_values(self, fixtures):
        assert harmonic(fixtures["p3"]) == pytest.approx([1.5, 2.0, 1.5])
        assert harmonic(fixtures["star3"]) == pytest.approx([3.0, 2.0, 2.0, 2.0])

    def test_isolated_node_scores_zero(self):
        g = Graph.from_edges([(0, 1)], n=3)
        assert closeness(g)[2] == 0.0
        assert harmonic(g)[2] == 0.0

    def test_agree_with_floyd_warshall(self):
        rng = np.random.default_rng(12)
        for _ in range(25):
            g = random_test_graph(rng, max_n=50)
            dist = floyd_warshall(g)
            expected_c = np.zeros(g.n)
            expected_h = np.zeros(g.n)
            for v in range(g.n):
                row = dist[v]
                reach = np.isfinite(row) & (row > 0)
                if row[reach].sum() > 0:
                    expected_c[v] = reach.sum() / row[reach].sum()
                expected_h[v] = (1.0 / row[reach]).sum()
            assert closeness(g) == pytest.approx(expected_c)
            assert harmonic(g) == pytest.approx(expected_h)


def dense_ppr_oracle(g: Graph, personalization, damping, iters=2000):
    restart = np.zeros(g.n)
    restart[list(personalization)] = 1.0 / len(personalization)
    p = np.zeros((g.n, g.n))
    deg = g.degrees
    for u, v in g.edges:
        p[u, v] = 1.0 / deg[u]
        p[v, u] = 1.0 / deg[v]
    score = restart.copy()
    for _ in range(iters):
        lost = score[deg == 0].sum()
        score = damping * (p.T @ score + lost * restart) + (1 - damping) * restart
    return score


class TestPpr:
    def test_k3_symmetry(self, fixtures):
        scores = ppr(fixtures["k3"], [0]).scores
        assert scores[1] == pytest.approx(scores[2])

    def test_sums_to_one(self, fixtures):
        for name in ("p5", "star3", "twin_triangles"):
            scores = ppr(fixtures[name], [0, 1]).scores
            assert abs(scores.sum() - 1.0) <= 1e-9
            assert (scores >= 0).all()

    def test_p3_decays_with_distance(self, fixtures):
        scores = ppr(fixtures["p3"], [0]).scores
        assert scores[0] > scores[2]

    def test_matches_dense_power_iteration(self, fixtures):
        for name in ("p5", "k4_tail"):
            g = fixtures[name]
            got = ppr(g, [1], tol=1e-12, max_iters=5000).scores
            expected = dense_ppr_oracle(g, [1], 0.85)
            assert got == pytest.approx(expected, abs=1e-8)

    def test_dangling_mass_redirected(self):
        g = Graph.from_edges([(0, 1)], n=3)  # node 2 dangling
        result = ppr(g, [0])
        assert abs(result.scores.sum() - 1.0) <= 1e-9

    def test_permutation_equivariance(self, fixtures):
        g = fixtures["k4_tail"]
        perm = np.array([3, 5, 0, 1, 4, 2])  # new id of each old id
        remapped = Graph.from_edges([(perm[u], perm[v]) for u, v in g.edges], g.n)
        base = ppr(g, [0], tol=1e-12).scores
        moved = ppr(remapped, [int(perm[0])], tol=1e-12).scores
        assert moved[perm] == pytest.approx(base, abs=1e-9)

    def test_non_convergence_flagged(self, fixtures):
        result = ppr(fixtures["c6"], [0], tol=1e-15, max_iters=2)
        assert not result.converged
        assert result.iterations == 2

    def test_empty_personalization_rejected(self, fixtures):
        with pytest.raises(ValueError):
            ppr(fixtures["p3"], [])
