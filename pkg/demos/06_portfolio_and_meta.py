"""Portfolio selection and the feature-driven meta-learner.

No single fast algorithm wins everywhere, so: (1) greedily pick the five
fast algorithms that jointly cover the most networks at 80% of Myopic's
slope; (2) train a random forest on nine structural features to predict the
best portfolio member for an unseen network. The oracle variant runs every
member and keeps the winner, bounding what the classifier could achieve.
"""

import numpy as np

from fairseed import (
    PRESET_ENSEMBLES,
    compute_features,
    fast_ensemble_oracle,
    meta_predict,
    select_ensemble,
    train_meta,
)
from fairseed.generators import watts_strogatz
from fairseed.graph import largest_connected_component
from fairseed.meta import coverage_of
from fairseed.seeders import AlgorithmId

rng = np.random.default_rng(31)
fast = [a for a in AlgorithmId if a not in (AlgorithmId.MYOPIC, AlgorithmId.NAIVE_MYOPIC)]

# a synthetic slope table playing the role of a benchmarked corpus
networks = [f"net{i:02d}" for i in range(18)]
beta_table = {n: {a: float(rng.normal(0.05, 0.03)) for a in fast} for n in networks}
beta_myopic = {n: float(rng.normal(0.06, 0.01)) for n in networks}

ensemble = select_ensemble(beta_table, beta_myopic, size=5, regime="medium")
print("greedy portfolio:", [a.value for a in ensemble.algorithms])
print(f"covers {ensemble.coverage}/{len(networks)} networks at 80% of Myopic")
print(f"best single algorithm covers "
      f"{max(coverage_of([a], beta_table, beta_myopic) for a in fast)}\n")

# published portfolios per spreadability regime ship as presets
for regime, preset in PRESET_ENSEMBLES.items():
    print(f"preset {regime:6s}: {[a.value for a in preset.algorithms]}")

# train the classifier on graphs whose best member follows their structure
print("\ntraining the meta-learner on 80 synthetic networks...")
features, labels = [], []
members = list(PRESET_ENSEMBLES["medium"].algorithms)
for i in range(80):
    k = int(rng.choice([2, 6, 10]))
    g = largest_connected_component(
        watts_strogatz(80, k, float(rng.choice([0.02, 0.7])), seed=900 + i)
    )
    f = compute_features(g, "social")
    if f.mean_degree < 4:
        label = members[0]
    elif f.mean_degree < 8:
        label = members[1] if f.clustering > 0.2 else members[2]
    else:
        label = members[3] if f.clustering > 0.2 else members[4]
    features.append(f)
    labels.append(label)

model = train_meta(features, labels, PRESET_ENSEMBLES["medium"], split_seed=4)
print(f"held-out accuracy: {model.manifest['held_out_accuracy']:.2f}")
print("feature importances (top 4):")
ranked = sorted(model.feature_importances().items(), key=lambda kv: -kv[1])
for name, importance in ranked[:4]:
    print(f"  {name:18s} {importance:.3f}")

probe = largest_connected_component(watts_strogatz(90, 10, 0.02, seed=7, name="probe"))
print(f"\npredicted best algorithm for a dense clustered probe graph: "
      f"{meta_predict(model, probe, 'social').value}")

oracle = fast_ensemble_oracle(
    probe, PRESET_ENSEMBLES["medium"], alpha=0.3,
    runs=3, k_max=4, eval_rounds=300,
)
print(f"oracle pick after actually evaluating all five: {oracle.algorithm.value}")
print(f"oracle slope table: "
      f"{ {a.value: round(b.mean, 4) for a, b in oracle.betas.items()} }")
