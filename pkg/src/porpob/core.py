"""Domain types shared across the toolkit.

A *study* is a collection of K sample arms, one per action, each holding the
outcomes observed under that action. All distributional machinery is built on
sorted arms: the empirical CDF is evaluated by binary search and the empirical
quantile function by order-statistic indexing.

Everything here is immutable after construction and safe to share across
threads.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

ActionId = int
Ranking = tuple[int, ...]


class PorPobError(Exception):
    """Base class for errors raised by this package."""


class ValidationError(PorPobError, ValueError):
    """Input data or arguments violate a documented invariant."""


class InternalConsistencyError(PorPobError, RuntimeError):
    """A state that the algebra rules out was reached; report it loudly."""


def validate_ranking(order: Sequence[int], k: int) -> Ranking:
    """Check that `order` is a permutation of {1, ..., k} and return it as a tuple."""
    ranking = tuple(int(a) for a in order)
    if sorted(ranking) != list(range(1, k + 1)):
        raise ValidationError(
            f"ranking {ranking!r} is not a permutation of actions 1..{k}"
        )
    return ranking


def all_rankings(k: int) -> Iterator[Ranking]:
    """Yield all k! rankings of {1, ..., k} in lexicographic order."""
    return itertools.permutations(range(1, k + 1))


@dataclass(frozen=True, eq=False)
class ArmSamples:
    """Outcomes observed under one action, stored sorted nondecreasing.

    Attributes:
        action: id of the action the samples belong to.
        values: 1-d float array, sorted nondecreasing, all finite.
    """

    action: ActionId
    values: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.values, dtype=float)
        if arr.ndim != 1 or arr.size < 1:
            raise ValidationError(
                f"arm {self.action}: values must be a nonempty 1-d sequence"
            )
        if not np.all(np.isfinite(arr)):
            raise ValidationError(f"arm {self.action}: values must be finite")
        arr = np.sort(arr)
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)
        object.__setattr__(self, "action", int(self.action))

    @property
    def n(self) -> int:
        return int(self.values.size)


@dataclass(frozen=True, eq=False)
class StudyData:
    """A K-arm dataset: one ArmSamples per action id 1..K.

    Invariants: K >= 2, arm keys are exactly {1, ..., K}, and every arm holds
    at least two samples (the quantile mapping needs at least two order
    statistics to be meaningful).
    """

    arms: Mapping[ActionId, ArmSamples]

    def __post_init__(self) -> None:
        arms = dict(self.arms)
        k = len(arms)
        if k < 2:
            raise ValidationError("a study needs at least two arms")
        if sorted(arms) != list(range(1, k + 1)):
            raise ValidationError(
                f"arm keys must be exactly 1..{k}, got {sorted(arms)}"
            )
        for key, arm in arms.items():
            if not isinstance(arm, ArmSamples):
                raise ValidationError(f"arm {key} is not an ArmSamples")
            if arm.action != key:
                raise ValidationError(
                    f"arm keyed {key} carries action id {arm.action}"
                )
            if arm.n < 2:
                raise ValidationError(f"arm {key}: needs at least 2 samples")
        object.__setattr__(self, "arms", MappingProxyType(arms))

    @property
    def k(self) -> int:
        return len(self.arms)

    @property
    def actions(self) -> tuple[ActionId, ...]:
        return tuple(range(1, self.k + 1))

    def arm(self, action: ActionId) -> ArmSamples:
        """Look up one arm; raises KeyError for an unknown action id."""
        return self.arms[action]

    @classmethod
    def from_arrays(cls, arrays: Mapping[ActionId, Iterable[float]]) -> "StudyData":
        return cls({int(a): ArmSamples(int(a), vals) for a, vals in arrays.items()})


def ecdf_eval(arm: ArmSamples, y) -> float | np.ndarray:
    """Empirical CDF of one arm: fraction of samples <= y.

    Right-continuous nondecreasing step function; 0 below the smallest sample
    and 1 at and above the largest. Accepts a scalar or an array of points.
    """
    counts = np.searchsorted(arm.values, y, side="right")
    if np.isscalar(y) or np.ndim(y) == 0:
        return float(counts) / arm.n
    return counts / arm.n


# Products n*p within this distance of an integer are treated as that integer.
# Rational p = j/m picks up at most ~2^-52 * n of float error, far below this.
_INDEX_SNAP = 1e-9


def quantile_index(n: int, p: float) -> int:
    """1-based order-statistic index floor(n*p) + 1, clamped into [1, n].

    The product n*p is snapped to an integer when within 1e-9 so that exact
    rational probabilities j/m index the way integer arithmetic would.
    """
    if not 0.0 <= p <= 1.0:
        raise ValidationError(f"probability {p!r} outside [0, 1]")
    t = p * n
    nearest = round(t)
    floored = nearest if abs(t - nearest) <= _INDEX_SNAP else math.floor(t)
    return min(max(int(floored) + 1, 1), n)


def empirical_quantile(arm: ArmSamples, p: float) -> float:
    """Empirical quantile of one arm: the order statistic at clamp(floor(n*p)+1, 1, n)."""
    return float(arm.values[quantile_index(arm.n, p) - 1])


def order_statistic_index(n: int, q: float) -> int:
    """1-based index ceil(n*q) clamped into [1, n], with the same near-integer
    snapping as `quantile_index`.

    Used for interval endpoints of sorted replicate or run values; without the
    snap, q values like (1 - 0.95) / 2 land one ulp above 0.025 and shift the
    index off by one.
    """
    if not 0.0 <= q <= 1.0:
        raise ValidationError(f"probability {q!r} outside [0, 1]")
    t = q * n
    nearest = round(t)
    ceiled = nearest if abs(t - nearest) <= _INDEX_SNAP else math.ceil(t)
    return min(max(int(ceiled), 1), n)


@dataclass(frozen=True, eq=False)
class EmpiricalCdf:
    """Callable view of one arm's empirical CDF, with its inverse."""

    arm: ArmSamples

    def __call__(self, y) -> float | np.ndarray:
        return ecdf_eval(self.arm, y)

    def inverse(self, p: float) -> float:
        return empirical_quantile(self.arm, p)


@dataclass(frozen=True, eq=False)
class PoMatrix:
    """A complete N x K table of outcomes: row = subject, column = action.

    Ties inside a row are allowed but flagged via `tie_row_count`, since the
    strict orderings the oracle evaluates cannot hold on tied values.
    """

    outcomes: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.outcomes, dtype=float)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 2:
            raise ValidationError(
                "outcome table must be 2-d with at least 1 row and 2 columns"
            )
        if not np.all(np.isfinite(arr)):
            raise ValidationError("outcome table entries must be finite")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "outcomes", arr)

    @property
    def n_subjects(self) -> int:
        return int(self.outcomes.shape[0])

    @property
    def k(self) -> int:
        return int(self.outcomes.shape[1])

    @property
    def tie_row_count(self) -> int:
        """Number of rows containing at least one duplicated value."""
        row_sorted = np.sort(self.outcomes, axis=1)
        return int(np.any(np.diff(row_sorted, axis=1) == 0, axis=1).sum())


@dataclass(frozen=True)
class IntervalEstimate:
    """A [lower, upper] subset of [0, 1] for a partially identified probability."""

    lower: float
    upper: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.lower <= self.upper <= 1.0):
            raise ValidationError(
                f"interval [{self.lower}, {self.upper}] must satisfy 0 <= lower <= upper <= 1"
            )

    @property
    def width(self) -> float:
        return self.upper - self.lower
