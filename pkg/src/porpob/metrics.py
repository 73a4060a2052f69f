"""Named statistics: a small tagged record naming one scalar metric of a
study, plus the dispatcher that evaluates it. Used by the replication
harness, the bootstrap, and the CLI so they can all speak about the same
metric vocabulary."""

from __future__ import annotations

from dataclasses import dataclass

from .bounds import GridConfig, pob_bounds, por_bounds
from .core import ActionId, Ranking, StudyData, ValidationError
from .estimators import estimate_pob, estimate_por

POINT_KINDS = ("por", "pob", "roe")
BOUND_KINDS = ("por_lower", "por_upper", "pob_lower", "pob_upper")
KINDS = POINT_KINDS + BOUND_KINDS

_RANKING_KINDS = ("por", "por_lower", "por_upper")
_ACTION_KINDS = ("pob", "roe", "pob_lower", "pob_upper")


@dataclass(frozen=True)
class StatisticSpec:
    """Names one scalar statistic: a point estimate or one bound endpoint.

    Ranking-flavored kinds carry a ranking, action-flavored kinds an action id.
    """

    kind: str
    ranking: Ranking | None = None
    action: ActionId | None = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValidationError(f"unknown statistic kind {self.kind!r}")
        if self.kind in _RANKING_KINDS:
            if self.ranking is None or self.action is not None:
                raise ValidationError(f"{self.kind} takes a ranking, not an action")
            object.__setattr__(self, "ranking", tuple(int(a) for a in self.ranking))
        else:
            if self.action is None or self.ranking is not None:
                raise ValidationError(f"{self.kind} takes an action, not a ranking")
            object.__setattr__(self, "action", int(self.action))

    @property
    def family(self) -> str:
        """The metric family: por, pob, or roe."""
        return self.kind.split("_")[0]

    @classmethod
    def por(cls, ranking) -> "StatisticSpec":
        return cls("por", ranking=tuple(ranking))

    @classmethod
    def pob(cls, action: ActionId) -> "StatisticSpec":
        return cls("pob", action=action)

    @classmethod
    def roe(cls, action: ActionId) -> "StatisticSpec":
        return cls("roe", action=action)

    def describe(self) -> str:
        arg = list(self.ranking) if self.ranking is not None else self.action
        return f"{self.kind}({arg})"


def evaluate_statistic(
    study: StudyData, stat: StatisticSpec, grid: GridConfig = GridConfig()
) -> float:
    """Evaluate one named statistic on a study. Bound kinds use `grid`."""
    if stat.kind == "por":
        return estimate_por(study, stat.ranking).value
    if stat.kind == "pob":
        return estimate_pob(study, stat.action).value
    if stat.kind == "roe":
        return float(study.arm(stat.action).values.mean())
    if stat.kind in ("por_lower", "por_upper"):
        interval = por_bounds(study, stat.ranking, grid)
        return interval.lower if stat.kind == "por_lower" else interval.upper
    interval = pob_bounds(study, stat.action, grid)
    return interval.lower if stat.kind == "pob_lower" else interval.upper
