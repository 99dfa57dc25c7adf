"""Comparing algorithms with the per-seed marginal-gain slope.

For one algorithm on one network: run it for budgets k = 1..10, record the
minimum access probability at each k, fit a line, and keep the slope. The
metric is that slope averaged over repeated runs: the expected improvement
in the worst-off node's access per extra seed. Categories compare each
algorithm against Myopic within one standard error.
"""

import time

from fairseed import benchmark_runtime, categorize, evaluate_beta
from fairseed.generators import core_periphery

g = core_periphery(150, 10, pendants=10, pendant_depth=2, seed=20, name="demo")
alpha, runs, k_max = 0.3, 8, 6
inits = list(range(runs))  # shared across algorithms: paired comparison

contenders = ("Myopic", "MyopicBFS", "Gonzalez", "MinDegree_hc", "MinDegree_nd", "Random")
results = {}
for name in contenders:
    start = time.perf_counter()
    results[name] = evaluate_beta(
        g, name, alpha=alpha, runs=runs, k_max=k_max,
        eval_rounds=500, seeder_rounds=500, inits=inits,
        eval_seed=1, seeder_seed=2,
    )
    print(f"{name:14s} beta = {results[name].mean:+.4f} +- {results[name].se:.4f} "
          f"({time.perf_counter() - start:.1f}s)")

myopic = results["Myopic"]
print("\nrelative to Myopic:")
for name in contenders:
    if name != "Myopic":
        print(f"  {name:14s} {categorize(results[name], myopic).value}")

print("\nwall-clock to select 6 seeds (3 reps, single core):")
for name in ("Myopic", "MyopicBFS", "MinDegree_nd"):
    record = benchmark_runtime(g, name, k=k_max, reps=3, alpha=alpha,
                               seeder_rounds=500, single_core=True)
    print(f"  {name:14s} {record.mean_ms:9.1f} ms +- {record.std_ms:.1f}")
