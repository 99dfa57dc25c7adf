"""Algorithm-portfolio machinery: greedy ensemble selection, the oracle
ensemble, and the feature-driven classifier that predicts the best fast
algorithm for a network.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import joblib
import numpy as np

from .evaluation import BetaResult, evaluate_beta
from .graph import DOMAINS, Graph, NetworkFeatures, compute_features
from .rng import TAG_SPLIT, fold_seed, substream
from .seeders import AlgorithmId, SeedSequence, run_seeder

MODEL_FORMAT_VERSION = 1

EXCLUDED_FROM_ENSEMBLES = frozenset({AlgorithmId.MYOPIC, AlgorithmId.NAIVE_MYOPIC})


@dataclass(frozen=True)
class EnsembleSet:
    """A small portfolio of fast algorithms for one spreadability regime."""

    algorithms: tuple[AlgorithmId, ...]
    regime: str
    coverage: int | None = None  # networks covered on the selection corpus

    def __post_init__(self):
        banned = set(self.algorithms) & EXCLUDED_FROM_ENSEMBLES
        if banned:
            raise ValueError(f"ensemble may not contain {sorted(a.value for a in banned)}")
        if len(set(self.algorithms)) != len(self.algorithms):
            raise ValueError("ensemble algorithms must be distinct")


# Published portfolios per spreadability regime, usable without rerunning
# ensemble selection.
PRESET_ENSEMBLES = {
    "low": EnsembleSet(
        (
            AlgorithmId.GONZALEZ,
            AlgorithmId.MYOPIC_BFS,
            AlgorithmId.MYOPIC_PPR,
            AlgorithmId.MIN_DEGREE_HCN,
            AlgorithmId.MIN_DEGREE_NDN,
        ),
        regime="low",
    ),
    "medium": EnsembleSet(
        (
            AlgorithmId.GONZALEZ,
            AlgorithmId.MYOPIC_BFS,
            AlgorithmId.MYOPIC_PPR,
            AlgorithmId.MIN_DEGREE_HC,
            AlgorithmId.MIN_DEGREE_HCN,
        ),
        regime="medium",
    ),
    "high": EnsembleSet(
        (
            AlgorithmId.GONZALEZ,
            AlgorithmId.LEAST_CENTRAL,
            AlgorithmId.MYOPIC_BFS,
            AlgorithmId.NAIVE_MYOPIC_BFS,
            AlgorithmId.MIN_DEGREE_HC,
        ),
        regime="high",
    ),
}


def select_ensemble(
    beta_table: Mapping[str, Mapping[AlgorithmId | str, float]],
    beta_myopic: Mapping[str, float],
    size: int = 5,
    regime: str = "medium",
) -> EnsembleSet:
    """Greedy max-coverage portfolio selection.

    A network is covered by algorithm ``a`` when its slope reaches 80% of
    Myopic's there. Each step adds the algorithm with the largest marginal
    covered count; ties break by canonical algorithm order. Networks where
    Myopic's slope is non-positive are trivially covered by any algorithm
    with a non-negative slope; they stay in the count but make the instance
    degenerate.
    """
    networks = sorted(beta_table)
    if set(networks) - set(beta_myopic):
        missing = sorted(set(networks) - set(beta_myopic))
        raise ValueError(f"missing Myopic slopes for networks: {missing}")
    seen: set[AlgorithmId] = set()
    for net in networks:
        seen.update(AlgorithmId(a) for a in beta_table[net])
    candidates = [a for a in AlgorithmId if a in seen and a not in EXCLUDED_FROM_ENSEMBLES]
    if len(candidates) < size:
        raise ValueError(f"need {size} candidate algorithms, have {len(candidates)}")
    for net in networks:
        row = {AlgorithmId(a) for a in beta_table[net]}
        absent = [a.value for a in candidates if a not in row]
        if absent:
            raise ValueError(f"network {net!r} missing slopes for {absent}")

    covered_by = {
        a: {
            net
            for net in networks
            if float(beta_table[net][_key(beta_table[net], a)]) >= 0.8 * float(beta_myopic[net])
        }
        for a in candidates
    }
    chosen: list[AlgorithmId] = []
    covered: set[str] = set()
    remaining = list(candidates)
    for _ in range(size):
        best = remaining[0]
        best_gain = -1
        for a in remaining:  # canonical order; strict > keeps the first of a tie
            gain = len(covered_by[a] - covered)
            if gain > best_gain:
                best, best_gain = a, gain
        chosen.append(best)
        covered |= covered_by[best]
        remaining.remove(best)
    return EnsembleSet(tuple(chosen), regime=regime, coverage=len(covered))


def _key(row: Mapping, a: AlgorithmId):
    return a if a in row else a.value


def coverage_of(
    algorithms: Sequence[AlgorithmId],
    beta_table: Mapping[str, Mapping],
    beta_myopic: Mapping[str, float],
) -> int:
    """Networks where at least one of ``algorithms`` reaches 80% of Myopic."""
    count = 0
    for net, row in beta_table.items():
        bar = 0.8 * float(beta_myopic[net])
        if any(float(row[_key(row, a)]) >= bar for a in algorithms):
            count += 1
    return count


@dataclass(frozen=True)
class OracleSelection:
    algorithm: AlgorithmId
    sequence: SeedSequence
    betas: dict[AlgorithmId, BetaResult]


def fast_ensemble_oracle(
    g: Graph,
    ensemble: EnsembleSet,
    alpha: float,
    *,
    runs: int = 20,
    k_max: int = 10,
    eval_rounds: int = 1000,
    eval_seed: int = 0,
    seeder_seed: int = 1,
    damping: float = 0.85,
    inits: Sequence[int] | None = None,
    evaluate_fn: Callable[..., BetaResult] | None = None,
) -> OracleSelection:
    """Evaluate every ensemble member on ``g`` and keep the best.

    Members share per-round initial seeds so the comparison is paired. The
    winner's reported runtime is its own alone; the measurement cost of the
    oracle is bookkeeping, not part of the selected algorithm.
    """
    evaluate = evaluate_fn if evaluate_fn is not None else evaluate_beta
    k_max = min(k_max, g.n - 1)
    if inits is None:
        gen = substream(seeder_seed, TAG_SPLIT)
        inits = [int(x) for x in gen.integers(g.n, size=runs)]
    members = sorted(ensemble.algorithms, key=list(AlgorithmId).index)
    betas = {
        a: evaluate(
            g, a,
            alpha=alpha, runs=runs, k_max=k_max,
            eval_rounds=eval_rounds, eval_seed=eval_seed,
            seeder_seed=seeder_seed, damping=damping, inits=inits,
        )
        for a in members
    }
    winner = members[0]
    for a in members[1:]:
        if betas[a].mean > betas[winner].mean:
            winner = a
    sequence = run_seeder(
        winner, g, k_max, inits[0],
        alpha=alpha,
        rng=substream(seeder_seed, TAG_SPLIT, 1),
        damping=damping,
    )
    return OracleSelection(algorithm=winner, sequence=sequence, betas=betas)


# -- feature-driven meta-learner ----------------------------------------------

NUMERIC_FEATURES = (
    "n",
    "mean_degree",
    "max_degree",
    "degree_variance",
    "clustering",
    "mean_path_length",
    "diameter",
    "assortativity",
)

FEATURE_NAMES = NUMERIC_FEATURES + tuple(f"domain={d}" for d in DOMAINS)


def feature_vector(f: NetworkFeatures) -> np.ndarray:
    numeric = [float(getattr(f, name)) for name in NUMERIC_FEATURES]
    onehot = [1.0 if f.domain == d else 0.0 for d in DOMAINS]
    return np.asarray(numeric + onehot)


@dataclass
class MetaModel:
    """Trained best-algorithm classifier plus its training manifest."""

    ensemble: EnsembleSet
    classifier: object
    manifest: dict = field(default_factory=dict)

    def feature_importances(self) -> dict[str, float]:
        imp = getattr(self.classifier, "feature_importances_", None)
        if imp is None:
            return {}
        return dict(zip(FEATURE_NAMES, (float(x) for x in imp)))


def train_meta(
    features: Sequence[NetworkFeatures],
    labels: Sequence[AlgorithmId | str],
    ensemble: EnsembleSet,
    split_seed: int = 0,
    *,
    network_names: Sequence[str] | None = None,
    test_fraction: float = 0.2,
    n_trees: int = 100,
    max_features: int = 3,
) -> MetaModel:
    """Fit the best-algorithm random forest on an 80-20 network split.

    Networks are split uniformly at random with the recorded seed; the
    forest trains on the train portion only and the manifest records
    held-out accuracy. Labels must come from ``ensemble``. A single-class
    label set still trains (the model is constant) but is flagged.
    """
    from sklearn.ensemble import RandomForestClassifier

    labels = [AlgorithmId(l) for l in labels]
    if len(features) != len(labels):
        raise ValueError("features and labels must align")
    if len(features) < 10:
        raise ValueError(f"need at least 10 labeled networks, got {len(features)}")
    outside = sorted({l.value for l in labels if l not in ensemble.algorithms})
    if outside:
        raise ValueError(f"labels outside the ensemble: {outside}")
    if network_names is None:
        network_names = [f"network-{i}" for i in range(len(features))]

    x = np.stack([feature_vector(f) for f in features])
    y = np.asarray([l.value for l in labels])
    rng = substream(split_seed, TAG_SPLIT)
    order = rng.permutation(len(features))
    n_test = int(round(test_fraction * len(features)))
    test_idx = np.sort(order[:n_test])
    train_idx = np.sort(order[n_test:])

    clf = RandomForestClassifier(
        n_estimators=n_trees,
        max_depth=None,
        max_features=max_features,
        bootstrap=True,
        random_state=fold_seed(split_seed, TAG_SPLIT) % (2**32),
        n_jobs=1,
    )
    clf.fit(x[train_idx], y[train_idx])
    held_out = (
        float((clf.predict(x[test_idx]) == y[test_idx]).mean()) if n_test else None
    )
    manifest = {
        "format_version": MODEL_FORMAT_VERSION,
        "split_seed": int(split_seed),
        "test_fraction": test_fraction,
        "train_networks": [network_names[i] for i in train_idx],
        "test_networks": [network_names[i] for i in test_idx],
        "held_out_accuracy": held_out,
        "single_class": len(set(y)) == 1,
        "hyperparameters": {
            "n_trees": n_trees,
            "max_depth": None,
            "max_features": max_features,
            "bootstrap": True,
        },
    }
    return MetaModel(ensemble=ensemble, classifier=clf, manifest=manifest)


def meta_predict(model: MetaModel, g: Graph, domain: str | None = None) -> AlgorithmId:
    """Predict the best ensemble member for ``g`` from its features."""
    feats = compute_features(g, domain)
    pred = model.classifier.predict(feature_vector(feats)[np.newaxis, :])[0]
    return AlgorithmId(str(pred))


def save_meta_model(model: MetaModel, path) -> None:
    payload = {
        "format_version": MODEL_FORMAT_VERSION,
        "ensemble": {
            "algorithms": [a.value for a in model.ensemble.algorithms],
            "regime": model.ensemble.regime,
            "coverage": model.ensemble.coverage,
        },
        "classifier": model.classifier,
        "manifest": model.manifest,
        "feature_names": list(FEATURE_NAMES),
    }
    joblib.dump(payload, path)


def load_meta_model(path) -> MetaModel:
    payload = joblib.load(path)
    version = payload.get("format_version")
    if version != MODEL_FORMAT_VERSION:
        raise ValueError(f"unsupported model format version {version!r}")
    ens = payload["ensemble"]
    ensemble = EnsembleSet(
        tuple(AlgorithmId(a) for a in ens["algorithms"]),
        regime=ens["regime"],
        coverage=ens["coverage"],
    )
    return MetaModel(
        ensemble=ensemble,
        classifier=payload["classifier"],
        manifest=payload["manifest"],
    )


# -- performance/speedup reporting --------------------------------------------

@dataclass(frozen=True)
class MetaReportRow:
    network: str
    selected: AlgorithmId
    beta_selected: float
    beta_myopic: float
    perf_diff_pct: float | None  # None when Myopic's slope is exactly 0
    t_selected_ms: float
    t_myopic_ms: float
    speedup: float


@dataclass(frozen=True)
class MetaReport:
    rows: tuple[MetaReportRow, ...]
    mean_perf_diff_pct: float
    std_perf_diff_pct: float
    mean_speedup: float
    std_speedup: float
    wins_over_myopic: int
    excluded_networks: int


def build_meta_report(
    selections: Mapping[str, AlgorithmId | str],
    beta_table: Mapping[str, Mapping[AlgorithmId | str, float]],
    beta_myopic: Mapping[str, float],
    timing_table: Mapping[str, Mapping[AlgorithmId | str, float]],
    timing_myopic: Mapping[str, float],
    inference_ms: float | Mapping[str, float] = 0.0,
) -> MetaReport:
    """Per-network and aggregate performance/speedup versus Myopic.

    The selected algorithm's cost includes model inference time when given.
    Networks with a Myopic slope of exactly zero have no defined percentage;
    they are excluded from the percentage aggregate and counted.
    """
    rows = []
    for net in sorted(selections):
        alg = AlgorithmId(selections[net])
        b_sel = float(beta_table[net][_key(beta_table[net], alg)])
        b_myo = float(beta_myopic[net])
        infer = (
            float(inference_ms[net])
            if isinstance(inference_ms, Mapping)
            else float(inference_ms)
        )
        t_sel = float(timing_table[net][_key(timing_table[net], alg)]) + infer
        t_myo = float(timing_myopic[net])
        if t_sel <= 0 or t_myo <= 0:
            raise ValueError(f"timings must be positive ({net})")
        pct = (b_sel - b_myo) / b_myo * 100.0 if b_myo != 0.0 else None
        rows.append(
            MetaReportRow(
                network=net,
                selected=alg,
                beta_selected=b_sel,
                beta_myopic=b_myo,
                perf_diff_pct=pct,
                t_selected_ms=t_sel,
                t_myopic_ms=t_myo,
                speedup=t_myo / t_sel,
            )
        )
    pcts = [r.perf_diff_pct for r in rows if r.perf_diff_pct is not None]
    speedups = [r.speedup for r in rows]
    return MetaReport(
        rows=tuple(rows),
        mean_perf_diff_pct=float(np.mean(pcts)) if pcts else 0.0,
        std_perf_diff_pct=float(np.std(pcts, ddof=1)) if len(pcts) > 1 else 0.0,
        mean_speedup=float(np.mean(speedups)) if speedups else 0.0,
        std_speedup=float(np.std(speedups, ddof=1)) if len(speedups) > 1 else 0.0,
        wins_over_myopic=sum(1 for r in rows if r.beta_selected > r.beta_myopic),
        excluded_networks=sum(1 for r in rows if r.perf_diff_pct is None),
    )
