"""Assumption-light interval bounds for ranking and best-outcome probabilities.

Without any coupling assumption, P(Y_a > Y_b) for a pair of actions is
bracketed by the classical two-sample bounds

    sup_y {F_a(y) - F_b(y)}  <=  P(Y_a > Y_b)  <=  1 - sup_y {F_a(y) - F_b(y)}
        (with the roles of a and b swapped on the left),

and conjunction/chain events combine these pairwise brackets through Frechet
inequalities. The plug-in versions below run on empirical CDFs.

The supremum of a difference of two step functions is attained at a jump
point, so "exact" mode evaluates it over the pooled sample points of the two
arms; "uniform" mode evaluates it on an M-point uniform grid instead.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    ActionId,
    IntervalEstimate,
    InternalConsistencyError,
    StudyData,
    ValidationError,
    validate_ranking,
)


@dataclass(frozen=True)
class GridConfig:
    """How to evaluate suprema of empirical-CDF differences.

    mode "exact" maximizes over the pooled sample points of the two arms being
    compared (the true supremum of the step-function difference). Mode
    "uniform" maximizes over `m` evenly spaced points of `span`; span None
    means "auto", the pooled sample min/max of the two arms.
    """

    mode: str = "exact"
    m: int | None = None
    span: tuple[float, float] | None = None

    def __post_init__(self) -> None:
        if self.mode not in ("exact", "uniform"):
            raise ValidationError(f"grid mode {self.mode!r} not in {{exact, uniform}}")
        if self.mode == "uniform":
            if self.m is None or self.m < 2:
                raise ValidationError("uniform grid needs m >= 2 points")
        if self.span is not None:
            lo, hi = self.span
            if not (np.isfinite(lo) and np.isfinite(hi) and lo < hi):
                raise ValidationError(f"grid span {self.span!r} needs lo < hi")

    @classmethod
    def exact(cls) -> "GridConfig":
        return cls(mode="exact")

    @classmethod
    def uniform(cls, m: int, span: tuple[float, float] | None = None) -> "GridConfig":
        return cls(mode="uniform", m=int(m), span=span)


def sup_cdf_diff(
    study: StudyData, a: ActionId, b: ActionId, grid: GridConfig = GridConfig()
) -> float:
    """sup_y {F_a(y) - F_b(y)} over the grid's evaluation points.

    The raw value is returned unclamped: exact mode always yields >= 0 (the
    largest pooled point gives 1 - 1 = 0), but a uniform grid restricted to an
    explicit span may legitimately come out negative.
    """
    arm_a = study.arm(a)
    arm_b = study.arm(b)
    if grid.mode == "exact":
        points = np.concatenate([arm_a.values, arm_b.values])
    else:
        if grid.span is not None:
            lo, hi = grid.span
        else:
            lo = min(arm_a.values[0], arm_b.values[0])
            hi = max(arm_a.values[-1], arm_b.values[-1])
        points = np.linspace(lo, hi, grid.m)
    fa = np.searchsorted(arm_a.values, points, side="right") / arm_a.n
    fb = np.searchsorted(arm_b.values, points, side="right") / arm_b.n
    return float(np.max(fa - fb))


def _interval(lower: float, upper: float) -> IntervalEstimate:
    lower = min(max(lower, 0.0), 1.0)
    upper = min(max(upper, 0.0), 1.0)
    if lower > upper:
        # The Frechet algebra rules this out for CDFs sharing evaluation
        # points; reaching it means a bug, not bad data.
        raise InternalConsistencyError(
            f"computed lower bound {lower} exceeds upper bound {upper}"
        )
    return IntervalEstimate(lower, upper)


def por_bounds(
    study: StudyData, ranking, grid: GridConfig = GridConfig()
) -> IntervalEstimate:
    """Distribution-free bounds on the probability of one strict ranking.

    lower = max(sum_k sup{F_{r_{k+1}} - F_{r_k}} - K + 2, 0) over the K-1
    adjacent pairs; upper = min_k(1 - sup{F_{r_k} - F_{r_{k+1}}}). For K = 2
    this is exactly the sharp two-sample bracket.
    """
    order = validate_ranking(ranking, study.k)
    forward = [
        sup_cdf_diff(study, nxt, cur, grid) for cur, nxt in zip(order, order[1:])
    ]
    backward = [
        sup_cdf_diff(study, cur, nxt, grid) for cur, nxt in zip(order, order[1:])
    ]
    lower = max(sum(forward) - (study.k - 2), 0.0)
    upper = min(1.0 - s for s in backward)
    return _interval(lower, upper)


def pob_bounds(
    study: StudyData, action: ActionId, grid: GridConfig = GridConfig()
) -> IntervalEstimate:
    """Distribution-free bounds on the probability that `action` is best.

    Same shape as `por_bounds` but every pair compares `action` against one
    alternative, so the result does not depend on how the complement set is
    ordered.
    """
    if action not in study.actions:
        raise ValidationError(f"action {action} outside 1..{study.k}")
    others = [a for a in study.actions if a != action]
    forward = [sup_cdf_diff(study, other, action, grid) for other in others]
    backward = [sup_cdf_diff(study, action, other, grid) for other in others]
    lower = max(sum(forward) - (study.k - 2), 0.0)
    upper = min(1.0 - s for s in backward)
    return _interval(lower, upper)
