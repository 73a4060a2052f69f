"""Seeded replication studies and the cost of many actions.

run_replications draws fresh studies under one generator and summarizes a
metric across runs (mean plus empirical 2.5%/97.5% quantiles). Per-run seeds
are hashed from the master seed and the run index, so results do not depend
on worker count. The sweep at the end shows how the ranking-chain estimate
degrades as the number of actions K grows while the best-action estimate
stays stable.
"""

import numpy as np

from porpob import StatisticSpec, analytic_truth, preset, run_replications

spec = preset("A")
stat = StatisticSpec.por((1, 2, 3))
summary = run_replications(spec, n_per_arm=300, runs=100, seed=11, metric=stat)
truth = analytic_truth(spec, stat).value
print("replication summary for the ranking probability under preset A:")
print(f"  runs=100, n per arm=300")
print(f"  mean {summary.mean:.4f}, 95% run band [{summary.ci_lower:.4f}, {summary.ci_upper:.4f}]")
print(f"  analytic truth {truth:.4f}\n")

print("same call on 4 worker threads gives identical per-run values:")
threaded = run_replications(
    spec, n_per_arm=300, runs=100, seed=11, metric=stat, workers=4
)
print(f"  identical = {np.array_equal(summary.values, threaded.values)}\n")

print("error vs number of actions K (preset C, truth 0.5 for both metrics):")
print(f"{'K':>4} {'mean |por err|':>16} {'mean |pob err|':>16}")
for k in (3, 5, 10, 20):
    spec_k = preset("C", k=k)
    por = run_replications(
        spec_k, 3000, runs=50, seed=4, metric=StatisticSpec.por(tuple(range(1, k + 1)))
    )
    pob = run_replications(spec_k, 3000, runs=50, seed=4, metric=StatisticSpec.pob(1))
    print(
        f"{k:>4} {np.mean(np.abs(por.values - 0.5)):>16.4f}"
        f" {np.mean(np.abs(pob.values - 0.5)):>16.4f}"
    )
print("\nThe chain multiplies K-1 noisy comparisons, so its error grows with")
print("K; the best-action event only compares the base arm against each")
print("alternative, and its error barely moves.")
