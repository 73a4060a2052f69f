"""Shared test utilities: data builders and independent reference
implementations used as oracles."""

from __future__ import annotations

import numpy as np

from porpob import StudyData

# Three classes (A, B, C), eight students, complete score table.
CLASSROOM_LABELS = ("A", "B", "C")
CLASSROOM_ROWS = [
    (30.0, 40.0, 50.0),
    (40.0, 50.0, 60.0),
    (50.0, 60.0, 70.0),
    (30.0, 50.0, 40.0),
    (40.0, 60.0, 50.0),
    (60.0, 70.0, 40.0),
    (50.0, 60.0, 40.0),
    (100.0, 5.0, 0.0),
]
CLASSROOM_MEANS = (50.0, 49.375, 43.75)


def classroom_array() -> np.ndarray:
    return np.array(CLASSROOM_ROWS)


def random_study(rng: np.random.Generator, k: int = 3, n: int = 40) -> StudyData:
    """Continuous random study; ties have probability zero."""
    return StudyData.from_arrays(
        {a: rng.normal(loc=a, scale=1.0 + 0.3 * a, size=n) for a in range(1, k + 1)}
    )


def increasing_pl_map(rng: np.random.Generator, lo: float, hi: float):
    """A random strictly increasing piecewise-linear function covering [lo, hi]."""
    knots = np.linspace(lo - 1.0, hi + 1.0, 8)
    heights = np.cumsum(rng.uniform(0.5, 2.0, size=knots.size))
    heights += rng.uniform(-3.0, 3.0)

    def g(values):
        return np.interp(values, knots, heights)

    return g


def transform_study(study: StudyData, g) -> StudyData:
    return StudyData.from_arrays(
        {a: g(study.arm(a).values) for a in study.actions}
    )


def relabel_study(study: StudyData, perm: dict[int, int]) -> StudyData:
    return StudyData.from_arrays(
        {perm[a]: study.arm(a).values for a in study.actions}
    )


def psi_reference(values_low, values_high):
    """Two-sample bracket for P(Y_high > Y_low), written independently of the
    bounds module (pure Python counting)."""
    pts = list(values_low) + list(values_high)
    n_low, n_high = len(values_low), len(values_high)

    def f_low(y):
        return sum(1 for v in values_low if v <= y) / n_low

    def f_high(y):
        return sum(1 for v in values_high if v <= y) / n_high

    lower = max(f_low(y) - f_high(y) for y in pts)
    upper = 1.0 - max(f_high(y) - f_low(y) for y in pts)
    return lower, upper


def brute_force_chain_fraction(matrix: np.ndarray, order) -> float:
    """Row-by-row strict-chain count, written independently of the estimators
    module (pure Python loops)."""
    hits = 0
    for row in matrix:
        vals = [row[a - 1] for a in order]
        if all(x > y for x, y in zip(vals, vals[1:])):
            hits += 1
    return hits / len(matrix)
