"""Estimating ranking probabilities from arm-wise samples.

Observed data never shows the same subject under two actions. When every arm
is strictly monotone in one shared noise (rank preservation), a subject's
unobserved outcomes are recovered by quantile matching, and the ranking and
best-action probabilities become estimable. This demo checks the estimates
against the analytic truth of a built-in generator as the sample grows.
"""

from porpob import (
    StatisticSpec,
    analytic_truth,
    best_action,
    best_ranking,
    estimate_pob,
    estimate_por,
    preset,
    sample_study,
)

spec = preset("A")  # arms scale a shared Unif(-0.5, 1) noise by (3, 2, 1)
ranking = (1, 2, 3)

truth_por = analytic_truth(spec, StatisticSpec.por(ranking)).value
truth_pob = analytic_truth(spec, StatisticSpec.pob(1)).value
print(f"analytic truth: P(Y1 > Y2 > Y3) = {truth_por:.4f}, P(1 is best) = {truth_pob:.4f}\n")

print(f"{'n per arm':>10} {'por estimate':>14} {'pob estimate':>14}")
for n in (30, 300, 3000, 30000):
    study = sample_study(spec, n, seed=2024)
    por = estimate_por(study, ranking).value
    pob = estimate_pob(study, 1).value
    print(f"{n:>10} {por:>14.4f} {pob:>14.4f}")

study = sample_study(spec, 3000, seed=2024)
order, order_est = best_ranking(study)
action, action_est = best_action(study)
print(f"\nargmax over all 3! rankings: {order} with value {order_est.value:.4f}")
print(f"argmax over actions:         {action} with value {action_est.value:.4f}")
