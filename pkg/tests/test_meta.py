from __future__ import annotations

from itertools import combinations

import numpy as np
import pytest

from fairseed.evaluation import BetaResult
from fairseed.generators import watts_strogatz
from fairseed.graph import compute_features, largest_connected_component
from fairseed.meta import (
    EnsembleSet,
    PRESET_ENSEMBLES,
    build_meta_report,
    coverage_of,
    fast_ensemble_oracle,
    feature_vector,
    load_meta_model,
    meta_predict,
    save_meta_model,
    select_ensemble,
    train_meta,
)
from fairseed.seeders import AlgorithmId

A = AlgorithmId

FAST = [a for a in A if a not in (A.MYOPIC, A.NAIVE_MYOPIC)]


def table_from(cover_map, networks):
    """Slope table where covering algorithms score 1.0, others 0.0."""
    table = {net: {} for net in networks}
    for alg, covered in cover_map.items():
        for net in networks:
            table[net][alg] = 1.0 if net in covered else 0.0
    return table


class TestSelectEnsemble:
    def test_universal_cover_chosen_first(self):
        nets = ["n1", "n2", "n3"]
        cover = {FAST[0]: set(nets), FAST[1]: {"n1"}, FAST[2]: set(), FAST[3]: set(), FAST[4]: set(), FAST[5]: set()}
        table = table_from(cover, nets)
        myopic = {net: 1.0 for net in nets}
        ensemble = select_ensemble(table, myopic, size=5)
        assert ensemble.algorithms[0] == FAST[0]
        assert ensemble.coverage == 3

    def test_greedy_trace(self):
        nets = ["1", "2", "3"]
        cover = {FAST[0]: {"1", "2"}, FAST[1]: {"3"}, FAST[2]: {"2"}}
        table = table_from(cover, nets)
        ensemble = select_ensemble(table, {n: 1.0 for n in nets}, size=2)
        assert ensemble.algorithms == (FAST[0], FAST[1])
        assert ensemble.coverage == 3

    def test_nonpositive_myopic_covers_everything(self):
        nets = ["a", "b"]
        table = {net: {FAST[i]: 0.0 for i in range(5)} for net in nets}
        ensemble = select_ensemble(table, {"a": 0.0, "b": -0.5}, size=5)
        assert ensemble.coverage == 2

    def test_myopic_never_a_candidate(self):
        nets = ["a"]
        table = {"a": {A.MYOPIC: 9.0, **{FAST[i]: 1.0 for i in range(5)}}}
        ensemble = select_ensemble(table, {"a": 1.0}, size=5)
        assert A.MYOPIC not in ensemble.algorithms

    def test_too_few_candidates(self):
        table = {"a": {FAST[0]: 1.0, FAST[1]: 1.0}}
        with pytest.raises(ValueError):
            select_ensemble(table, {"a": 1.0}, size=5)

    def test_missing_cell_rejected(self):
        table = {"a": {FAST[i]: 1.0 for i in range(5)}, "b": {FAST[i]: 1.0 for i in range(4)}}
        with pytest.raises(ValueError):
            select_ensemble(table, {"a": 1.0, "b": 1.0}, size=5)

    def test_greedy_vs_bruteforce_guarantee(self):
        rng = np.random.default_rng(14)
        for trial in range(50):
            n_algs = int(rng.integers(5, 9))
            n_nets = int(rng.integers(3, 13))
            algs = FAST[:n_algs]
            nets = [f"net{i}" for i in range(n_nets)]
            table = {
                net: {a: float(rng.normal(0.05, 0.04)) for a in algs} for net in nets
            }
            myopic = {net: float(rng.normal(0.05, 0.02)) for net in nets}
            size = min(5, n_algs)
            ensemble = select_ensemble(table, myopic, size=size)
            best = max(
                (coverage_of(subset, table, myopic) for subset in combinations(algs, size))
            )
            assert ensemble.coverage >= (1 - 1 / np.e) * best - 1e-9, trial
            greedy_recount = coverage_of(ensemble.algorithms, table, myopic)
            assert greedy_recount == ensemble.coverage


class TestEnsembleSet:
    def test_presets_are_valid(self):
        for regime, ensemble in PRESET_ENSEMBLES.items():
            assert len(ensemble.algorithms) == 5
            assert ensemble.regime == regime

    def test_myopic_banned(self):
        with pytest.raises(ValueError):
            EnsembleSet((A.MYOPIC, A.GONZALEZ), regime="low")

    def test_duplicates_banned(self):
        with pytest.raises(ValueError):
            EnsembleSet((A.GONZALEZ, A.GONZALEZ), regime="low")


class TestFastEnsembleOracle:
    def _stub(self, forced: dict):
        def evaluate(g, algorithm, **kwargs):
            return BetaResult(
                algorithm=A(algorithm), alpha=0.5,
                slopes=(forced[A(algorithm)],), k_max=10, rounds=10, negative_slopes=0,
            )
        return evaluate

    def test_forced_winner_selected(self, fixtures):
        ensemble = PRESET_ENSEMBLES["medium"]
        forced = {a: 0.01 for a in ensemble.algorithms}
        forced[A.MIN_DEGREE_HC] = 1.0
        selection = fast_ensemble_oracle(
            fixtures["c6"], ensemble, alpha=0.5, evaluate_fn=self._stub(forced)
        )
        assert selection.algorithm is A.MIN_DEGREE_HC
        assert selection.sequence.algorithm is A.MIN_DEGREE_HC

    def test_all_tie_canonical_order(self, fixtures):
        ensemble = PRESET_ENSEMBLES["medium"]
        forced = {a: 0.5 for a in ensemble.algorithms}
        selection = fast_ensemble_oracle(
            fixtures["c6"], ensemble, alpha=0.5, evaluate_fn=self._stub(forced)
        )
        members = sorted(ensemble.algorithms, key=list(A).index)
        assert selection.algorithm is members[0]

    def test_matches_exhaustive_on_exact_betas(self, fixtures):
        g = fixtures["k4_tail"]
        ensemble = EnsembleSet(
            (A.GONZALEZ, A.MYOPIC_BFS, A.LEAST_CENTRAL, A.MIN_DEGREE_HC, A.MIN_DEGREE_ND),
            regime="medium",
        )
        from fairseed.evaluation import evaluate_beta

        def exact_eval(g, algorithm, **kwargs):
            kwargs["evaluator"] = "exact"
            return evaluate_beta(g, algorithm, **kwargs)

        selection = fast_ensemble_oracle(
            g, ensemble, alpha=0.5, runs=3, k_max=3, evaluate_fn=exact_eval,
        )
        assert selection.algorithm in ensemble.algorithms
        means = {a: r.mean for a, r in selection.betas.items()}
        assert means[selection.algorithm] == max(means.values())


def planted_corpus(count=80, seed=0):
    """Graphs whose best-algorithm label is a function of mean degree and
    clustering, with wide margins around the thresholds."""
    rng = np.random.default_rng(seed)
    members = list(PRESET_ENSEMBLES["medium"].algorithms)
    graphs, features, labels = [], [], []
    for i in range(count):
        k = int(rng.choice([2, 6, 10]))
        rewire = float(rng.choice([0.02, 0.7]))
        n = int(rng.integers(60, 100))
        g = largest_connected_component(
            watts_strogatz(n, k, rewire, seed=1000 + i, name=f"ws{i}")
        )
        f = compute_features(g, "social")
        if f.mean_degree < 4:
            label = members[0]
        elif f.mean_degree < 8:
            label = members[1] if f.clustering > 0.2 else members[2]
        else:
            label = members[3] if f.clustering > 0.2 else members[4]
        graphs.append(g)
        features.append(f)
        labels.append(label)
    return graphs, features, labels


class TestMetaLearner:
    def test_recovers_planted_rule(self):
        graphs, features, labels = planted_corpus()
        model = train_meta(features, labels, PRESET_ENSEMBLES["medium"], split_seed=3)
        assert model.manifest["held_out_accuracy"] >= 0.9

    def test_prediction_stays_in_ensemble(self):
        graphs, features, labels = planted_corpus(count=40)
        model = train_meta(features, labels, PRESET_ENSEMBLES["medium"], split_seed=3)
        for g in graphs[:10]:
            assert meta_predict(model, g, "social") in model.ensemble.algorithms

    def test_prediction_deterministic(self):
        graphs, features, labels = planted_corpus(count=40)
        model = train_meta(features, labels, PRESET_ENSEMBLES["medium"], split_seed=3)
        assert meta_predict(model, graphs[0]) == meta_predict(model, graphs[0])

    def test_round_trip_identical_predictions(self, tmp_path):
        graphs, features, labels = planted_corpus(count=40)
        model = train_meta(features, labels, PRESET_ENSEMBLES["medium"], split_seed=3)
        path = tmp_path / "model.joblib"
        save_meta_model(model, path)
        loaded = load_meta_model(path)
        for g in graphs:
            assert meta_predict(loaded, g) == meta_predict(model, g)
        assert loaded.manifest == model.manifest

    def test_needs_ten_networks(self):
        _, features, labels = planted_corpus(count=9)
        with pytest.raises(ValueError):
            train_meta(features, labels, PRESET_ENSEMBLES["medium"])

    def test_labels_must_come_from_ensemble(self):
        _, features, _ = planted_corpus(count=12)
        labels = [A.MYOPIC] * 12
        with pytest.raises(ValueError):
            train_meta(features, labels, PRESET_ENSEMBLES["medium"])

    def test_single_class_flagged(self):
        _, features, _ = planted_corpus(count=12)
        labels = [A.GONZALEZ] * 12
        model = train_meta(features, labels, PRESET_ENSEMBLES["medium"])
        assert model.manifest["single_class"]

    def test_duplicated_rows_train_perfectly(self):
        _, features, labels = planted_corpus(count=20)
        model = train_meta(
            features * 2, list(labels) * 2, PRESET_ENSEMBLES["medium"], split_seed=1,
            network_names=[f"n{i}" for i in range(40)],
        )
        x = np.stack([feature_vector(f) for f in features])
        y = np.asarray([l.value for l in labels])
        assert (model.classifier.predict(x) == y).mean() == 1.0


class TestMetaReport:
    TABLE = {
        "net1": {A.GONZALEZ: 0.04, A.MYOPIC: 0.05},
        "net2": {A.GONZALEZ: 0.06, A.MYOPIC: 0.05},
        "net3": {A.GONZALEZ: 0.01, A.MYOPIC: 0.0},
    }
    MYOPIC_B = {"net1": 0.05, "net2": 0.05, "net3": 0.0}
    TIMING = {net: {A.GONZALEZ: 2.0} for net in TABLE}
    MYOPIC_T = {net: 100.0 for net in TABLE}
    SELECTIONS = {net: A.GONZALEZ for net in TABLE}

    def test_hand_computed_aggregates(self):
        report = build_meta_report(
            self.SELECTIONS, self.TABLE, self.MYOPIC_B, self.TIMING, self.MYOPIC_T
        )
        # net1: -20%, net2: +20%, net3 excluded
        assert report.mean_perf_diff_pct == pytest.approx(0.0)
        assert report.std_perf_diff_pct == pytest.approx(np.std([-20, 20], ddof=1))
        assert report.mean_speedup == pytest.approx(50.0)
        assert report.excluded_networks == 1
        assert report.wins_over_myopic == 2  # net2 and net3

    def test_inference_time_added(self):
        report = build_meta_report(
            self.SELECTIONS, self.TABLE, self.MYOPIC_B, self.TIMING, self.MYOPIC_T,
            inference_ms=2.0,
        )
        assert report.rows[0].t_selected_ms == pytest.approx(4.0)
        assert report.rows[0].speedup == pytest.approx(25.0)

    def test_identical_betas_zero_diff(self):
        table = {"n": {A.GONZALEZ: 0.05, A.MYOPIC: 0.05}}
        report = build_meta_report(
            {"n": A.GONZALEZ}, table, {"n": 0.05}, {"n": {A.GONZALEZ: 1.0}}, {"n": 1.0}
        )
        assert report.mean_perf_diff_pct == 0.0
        assert report.mean_speedup == 1.0

    def test_permutation_invariant(self):
        order_a = build_meta_report(
            self.SELECTIONS, self.TABLE, self.MYOPIC_B, self.TIMING, self.MYOPIC_T
        )
        reversed_sel = dict(reversed(list(self.SELECTIONS.items())))
        order_b = build_meta_report(
            reversed_sel, self.TABLE, self.MYOPIC_B, self.TIMING, self.MYOPIC_T
        )
        assert order_a == order_b
