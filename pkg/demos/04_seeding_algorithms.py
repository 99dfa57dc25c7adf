"""All fourteen seeding algorithms on one network.

Each algorithm receives the same randomly chosen initial seed (not counted
against the budget) and then extends the seed set one node at a time. The
goal is a seed set maximizing the worst-off node's activation probability.
"""

from fairseed import ALL_ALGORITHMS, CascadeConfig, prob_est, run_seeder
from fairseed.generators import core_periphery
from fairseed.rng import substream

g = core_periphery(60, 8, pendants=6, pendant_depth=2, seed=12, name="demo")
alpha, k, init = 0.3, 5, 0
cfg = CascadeConfig(alpha, rounds=1000, rng_seed=42)

print(f"network: n={g.n}, m={g.m}; init={init}, budget k={k}, alpha={alpha}\n")
print(f"{'algorithm':18s} {'seeds':24s} pi_min")

for algorithm in ALL_ALGORITHMS:
    seq = run_seeder(
        algorithm, g, k, init,
        alpha=alpha, cascade_cfg=cfg, rng=substream(7),
    )
    achieved = prob_est(g, seq.prefix(k), CascadeConfig(alpha, 4000, rng_seed=99))
    print(f"{algorithm.value:18s} {str(list(seq.seeds)):24s} {achieved.pi_min():.3f}")

baseline = prob_est(g, [init], CascadeConfig(alpha, 4000, rng_seed=99))
print(f"\nfor reference, pi_min with the initial seed alone: {baseline.pi_min():.3f}")
