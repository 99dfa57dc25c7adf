from __future__ import annotations

import numpy as np
import pytest

from fairseed.cascade import (
    CascadeConfig,
    SpreadabilityCurve,
    calibrate_alpha,
    exact_access,
    measure_spreadability_curve,
    prob_est,
    simulate_cascade,
    spreadability,
    _reach_batch,
    _reach_frontier,
)
from fairseed.graph import Graph
from fairseed.rng import substream

from conftest import brute_force_access, random_test_graph


def mc_tolerance(rounds: int) -> float:
    return 3.0 * np.sqrt(0.25 / rounds) + 0.002


class TestSimulate:
    def test_alpha_zero_only_seeds(self, fixtures):
        out = simulate_cascade(fixtures["k4"], [2], 0.0, substream(1))
        assert out.tolist() == [2]

    def test_alpha_one_whole_component(self, fixtures):
        out = simulate_cascade(fixtures["c6"], [3], 1.0, substream(1))
        assert out.tolist() == list(range(6))

    def test_empty_seed_set_rejected(self, fixtures):
        with pytest.raises(ValueError):
            simulate_cascade(fixtures["p3"], [], 0.5, substream(1))

    def test_p3_end_activation_rate(self, fixtures):
        # exact Pr[node 2 activated | seed {0}, alpha=.5] = 0.25
        est = prob_est(fixtures["p3"], [0], CascadeConfig(0.5, rounds=10000, rng_seed=3))
        assert abs(est.pi[2] - 0.25) <= 3.0 * np.sqrt(0.25 * 0.75 / 10000)


class TestExactAccess:
    def test_p3_hand_values(self, fixtures):
        est = exact_access(fixtures["p3"], [0], 0.5)
        assert est.pi == pytest.approx([1.0, 0.5, 0.25])

    def test_k3_hand_values(self, fixtures):
        est = exact_access(fixtures["k3"], [0], 0.5)
        assert est.pi == pytest.approx([1.0, 0.625, 0.625])

    def test_alpha_zero_indicator(self, fixtures):
        est = exact_access(fixtures["k4"], [1, 3], 0.0)
        assert est.pi.tolist() == [0.0, 1.0, 0.0, 1.0]

    def test_matches_python_enumeration(self, fixtures):
        for name in ("p5", "star3", "twin_triangles"):
            g = fixtures[name]
            for alpha in (0.3, 0.7):
                expected = brute_force_access(g, [1], alpha)
                got = exact_access(g, [1], alpha).pi
                assert got == pytest.approx(expected, abs=1e-12), name

    def test_refuses_large_graphs(self):
        g = Graph.from_edges([(i, i + 1) for i in range(21)])
        with pytest.raises(ValueError):
            exact_access(g, [0], 0.5)

    def test_seed_monotonicity(self, fixtures):
        for name in ("p5", "k4_tail", "double_star"):
            g = fixtures[name]
            base = exact_access(g, [0], 0.4).pi
            more = exact_access(g, [0, g.n - 1], 0.4).pi
            assert (more >= base - 1e-12).all()


class TestProbEst:
    def test_matches_exact_oracle(self, fixtures):
        for name in ("p3", "k3", "k4_tail"):
            g = fixtures[name]
            for alpha in (0.1, 0.5, 0.9):
                cfg = CascadeConfig(alpha, rounds=100000, rng_seed=17)
                got = prob_est(g, [0], cfg).pi
                expected = exact_access(g, [0], alpha).pi
                assert np.abs(got - expected).max() <= mc_tolerance(cfg.rounds), (name, alpha)

    def test_alpha_one_exact(self, fixtures):
        est = prob_est(fixtures["twin_triangles"], [0], CascadeConfig(1.0, rounds=50))
        assert (est.pi == 1.0).all()

    def test_seeds_always_one(self, fixtures):
        est = prob_est(fixtures["p5"], [2, 4], CascadeConfig(0.2, rounds=100))
        assert est.pi[2] == 1.0 and est.pi[4] == 1.0

    def test_deterministic_and_parallel_invariant(self, fixtures):
        g = fixtures["k4_tail"]
        serial = prob_est(g, [0], CascadeConfig(0.5, rounds=9000, rng_seed=5, parallel=False))
        again = prob_est(g, [0], CascadeConfig(0.5, rounds=9000, rng_seed=5, parallel=False))
        threaded = prob_est(g, [0], CascadeConfig(0.5, rounds=9000, rng_seed=5, parallel=True))
        assert (serial.pi == again.pi).all()
        assert (serial.pi == threaded.pi).all()

    def test_statistical_monotonicity_in_alpha(self, fixtures):
        g = fixtures["twin_triangles"]
        lo = prob_est(g, [0], CascadeConfig(0.4, rounds=10000, rng_seed=8))
        hi = prob_est(g, [0], CascadeConfig(0.6, rounds=10000, rng_seed=8))
        assert hi.pi_min() >= lo.pi_min() - 0.02

    def test_kernels_agree(self):
        # batched edge-sweep and per-replicate frontier BFS must match
        rng = np.random.default_rng(9)
        for _ in range(20):
            g = random_test_graph(rng, max_n=24)
            masks = substream(3, 3).random((16, g.m)) < 0.5
            seeds = np.array([0])
            batch = _reach_batch(g, masks, seeds=seeds)
            for r in range(16):
                single = _reach_frontier(g, seeds, masks[r])
                assert (batch[r] == single).all()


class TestSpreadability:
    def test_alpha_zero(self, fixtures):
        assert spreadability(fixtures["p5"], 0.0, rounds=500) == pytest.approx(1 / 5)

    def test_alpha_one_connected(self, fixtures):
        assert spreadability(fixtures["c4"], 1.0, rounds=500) == 1.0

    def test_p3_value(self, fixtures):
        # per-seed exact expectations average to 11/18
        f = spreadability(fixtures["p3"], 0.5, rounds=100000, rng_seed=2)
        assert abs(f - 11 / 18) <= 3.0 * 0.35 / np.sqrt(100000)

    def test_curve_sorted_and_bounded(self, fixtures):
        curve = measure_spreadability_curve(
            fixtures["c6"], rounds=200, grid=(0.1, 0.5, 0.9)
        )
        assert list(curve.alphas) == [0.1, 0.5, 0.9]
        for f in curve.fractions:
            assert 1 / 6 <= f <= 1.0

    def test_curve_csv_round_trip(self, fixtures, tmp_path):
        curve = measure_spreadability_curve(fixtures["p3"], rounds=100, grid=(0.2, 0.8))
        path = tmp_path / "curve.csv"
        curve.to_csv(path)
        back = SpreadabilityCurve.from_csv(path, rounds=100)
        assert back == curve


class TestCalibration:
    def test_target_below_reach_uses_smallest_alpha(self, fixtures):
        g = fixtures["c6"]  # 1/n chance level ~ 0.167
        result = calibrate_alpha(g, 0.17, rounds=2000, rng_seed=1)
        assert result.alpha == 0.01

    def test_unreachable_target_flagged(self):
        curve = SpreadabilityCurve(alphas=(0.01, 0.5, 0.99), fractions=(0.2, 0.4, 0.6), rounds=1)
        g = Graph.from_edges([(0, 1), (1, 2), (2, 3)])
        result = calibrate_alpha(g, 0.9, curve=curve)
        assert result.target_unreachable
        assert result.alpha == 0.99

    def test_tie_breaks_toward_smaller_alpha(self):
        curve = SpreadabilityCurve(alphas=(0.1, 0.2, 0.3), fractions=(0.4, 0.6, 0.8), rounds=1)
        g = Graph.from_edges([(0, 1), (1, 2), (2, 3)])
        result = calibrate_alpha(g, 0.5, curve=curve)  # 0.4 and 0.6 tie
        assert result.alpha == 0.1

    def test_invalid_target_rejected(self, fixtures):
        with pytest.raises(ValueError):
            calibrate_alpha(fixtures["p3"], 0.2)  # 0.2 < 1/3
        with pytest.raises(ValueError):
            calibrate_alpha(fixtures["p3"], 1.2)

    def test_bisect_close_to_grid(self, fixtures):
        g = fixtures["k4_tail"]
        full = calibrate_alpha(g, 0.8, rounds=1500, rng_seed=4)
        fast = calibrate_alpha(g, 0.8, rounds=1500, rng_seed=4, method="bisect")
        assert abs(fast.alpha - full.alpha) <= 0.05

    def test_calibrated_alpha_reproduces_target(self, fixtures):
        g = fixtures["k4_tail"]
        result = calibrate_alpha(g, 0.5, rounds=1000, rng_seed=6)
        remeasured = spreadability(g, result.alpha, rounds=10000, rng_seed=99)
        assert abs(remeasured - 0.5) <= 0.05
