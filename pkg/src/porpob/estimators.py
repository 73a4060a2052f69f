"""Point estimation of ranking and best-outcome probabilities.

Under the rank-preservation assumption (every subject sits at the same
quantile of each action's outcome distribution), a subject's unobserved
outcome under action t is recovered from their observed outcome y under
action b by the quantile coupling  F_t^{-1}(F_b(y)).  The plug-in versions of
that map turn one arm's samples into estimates of the full outcome profile,
from which ranking probabilities (strict chains) and best-outcome
probabilities (strict conjunctions) are counted.

`exact_por` / `exact_pob` are the finite-population counterparts evaluated on
a complete outcome table; they serve as the independent oracle for everything
else.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    ActionId,
    ArmSamples,
    PoMatrix,
    Ranking,
    StudyData,
    ValidationError,
    all_rankings,
    validate_ranking,
)

DEFAULT_FACTORIAL_CAP = 8


@dataclass(frozen=True)
class PorEstimate:
    """Estimated probability that outcomes follow one specific strict ranking.

    `count` over `n` base-arm samples gives `value`; the integers allow exact
    arithmetic (e.g. marginalization identities) without float slack.
    """

    ranking: Ranking
    value: float
    base_action: ActionId
    count: int
    n: int


@dataclass(frozen=True)
class PobEstimate:
    """Estimated probability that one action yields the subject's best outcome."""

    action: ActionId
    value: float
    count: int
    n: int


@dataclass(frozen=True, eq=False)
class RoeEstimate:
    """Per-arm sample means and the ranking they induce (descending mean).

    Exact mean ties are broken toward the smaller action id.
    """

    means: dict[ActionId, float]
    ranking_by_mean: Ranking


@dataclass(frozen=True)
class OracleResult:
    """Finite-population probability plus the number of rows where only ties
    blocked the strict condition (the weak version held, the strict one did not)."""

    value: float
    tie_rows: int


def counterfactual_map(
    study: StudyData, base: ActionId, target: ActionId, y: float
) -> float:
    """Transport an outcome observed under `base` to its matched quantile under `target`.

    Plug-in evaluation of F_target^{-1}(F_base(y)). The order-statistic index
    floor(n_t * F_base(y)) + 1 is computed in exact integer arithmetic from the
    base-arm count, then clamped into [1, n_t].
    """
    base_arm = study.arm(base)
    target_arm = study.arm(target)
    count = int(np.searchsorted(base_arm.values, y, side="right"))
    idx = min(max((target_arm.n * count) // base_arm.n + 1, 1), target_arm.n)
    return float(target_arm.values[idx - 1])


def _base_counts(base_arm: ArmSamples) -> np.ndarray:
    # For each base sample y_i, the number of base samples <= y_i.
    return np.searchsorted(base_arm.values, base_arm.values, side="right")


def _mapped_column(
    base_arm: ArmSamples, target_arm: ArmSamples, counts: np.ndarray
) -> np.ndarray:
    idx = (target_arm.n * counts) // base_arm.n + 1
    np.clip(idx, 1, target_arm.n, out=idx)
    return target_arm.values[idx - 1]


def estimate_por(study: StudyData, ranking) -> PorEstimate:
    """Fraction of base-arm samples whose mapped outcome profile follows `ranking`.

    The base arm is the ranking's first element. Each of its samples is
    transported into every other arm via the quantile coupling and counted
    when the strict chain  y > m_2 > ... > m_K  holds; any tie breaks the
    chain.
    """
    order = validate_ranking(ranking, study.k)
    base_arm = study.arm(order[0])
    counts = _base_counts(base_arm)
    ok = np.ones(base_arm.n, dtype=bool)
    prev = base_arm.values
    for action in order[1:]:
        cur = _mapped_column(base_arm, study.arm(action), counts)
        ok &= prev > cur
        prev = cur
    count = int(np.count_nonzero(ok))
    return PorEstimate(
        ranking=order,
        value=count / base_arm.n,
        base_action=order[0],
        count=count,
        n=base_arm.n,
    )


def estimate_pob(study: StudyData, action: ActionId) -> PobEstimate:
    """Fraction of `action`'s samples that exceed every mapped alternative.

    Conjunction, not chain: the order of the remaining actions is irrelevant.
    """
    base_arm = study.arm(action)
    counts = _base_counts(base_arm)
    ok = np.ones(base_arm.n, dtype=bool)
    for other in study.actions:
        if other == action:
            continue
        ok &= base_arm.values > _mapped_column(base_arm, study.arm(other), counts)
    count = int(np.count_nonzero(ok))
    return PobEstimate(
        action=action, value=count / base_arm.n, count=count, n=base_arm.n
    )


def estimate_roe(study: StudyData) -> RoeEstimate:
    """Per-arm sample means, ranked descending (mean ties toward smaller id)."""
    means = {a: float(study.arm(a).values.mean()) for a in study.actions}
    order = tuple(sorted(means, key=lambda a: (-means[a], a)))
    return RoeEstimate(means=means, ranking_by_mean=order)


def best_ranking(
    study: StudyData, *, factorial_cap: int = DEFAULT_FACTORIAL_CAP
) -> tuple[Ranking, PorEstimate]:
    """Exhaustive argmax of `estimate_por` over all K! rankings.

    Evaluates every ranking, so K is capped (default 8, i.e. 40320
    evaluations); pass a larger `factorial_cap` to override. Ties go to the
    lexicographically smallest ranking.
    """
    if study.k > factorial_cap:
        raise ValidationError(
            f"K={study.k} would enumerate {study.k}! rankings; "
            f"raise factorial_cap (currently {factorial_cap}) to allow this"
        )
    best: PorEstimate | None = None
    for order in all_rankings(study.k):
        est = estimate_por(study, order)
        if best is None or est.value > best.value:
            best = est
    assert best is not None
    return best.ranking, best


def best_action(study: StudyData) -> tuple[ActionId, PobEstimate]:
    """Argmax of `estimate_pob` over actions; ties go to the smallest id."""
    best: PobEstimate | None = None
    for action in study.actions:
        est = estimate_pob(study, action)
        if best is None or est.value > best.value:
            best = est
    assert best is not None
    return best.action, best


def exact_por(matrix: PoMatrix, ranking) -> OracleResult:
    """Fraction of rows whose outcomes strictly decrease along `ranking`.

    Rows where the weak chain holds but a tie breaks the strict one are
    reported in `tie_rows`.
    """
    order = validate_ranking(ranking, matrix.k)
    cols = matrix.outcomes[:, [a - 1 for a in order]]
    steps = np.diff(cols, axis=1)
    strict = np.all(steps < 0, axis=1)
    weak = np.all(steps <= 0, axis=1)
    return OracleResult(
        value=float(np.count_nonzero(strict)) / matrix.n_subjects,
        tie_rows=int(np.count_nonzero(weak) - np.count_nonzero(strict)),
    )


def exact_pob(matrix: PoMatrix, action: ActionId) -> OracleResult:
    """Fraction of rows whose unique maximum sits in `action`'s column.

    Rows where `action` merely ties the row maximum are reported in `tie_rows`.
    """
    if not 1 <= action <= matrix.k:
        raise ValidationError(f"action {action} outside 1..{matrix.k}")
    col = matrix.outcomes[:, action - 1]
    others = np.delete(matrix.outcomes, action - 1, axis=1)
    others_max = others.max(axis=1)
    strict = col > others_max
    weak = col >= others_max
    return OracleResult(
        value=float(np.count_nonzero(strict)) / matrix.n_subjects,
        tie_rows=int(np.count_nonzero(weak) - np.count_nonzero(strict)),
    )
