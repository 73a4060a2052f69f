import pytest

from porpob import (
    GridConfig,
    StatisticSpec,
    ValidationError,
    estimate_pob,
    estimate_por,
    evaluate_statistic,
    pob_bounds,
    por_bounds,
)

from helpers import random_study


class TestStatisticSpec:
    def test_ranking_kinds_need_rankings(self):
        with pytest.raises(ValidationError):
            StatisticSpec("por", action=1)
        with pytest.raises(ValidationError):
            StatisticSpec("pob", ranking=(1, 2))
        with pytest.raises(ValidationError):
            StatisticSpec("weird", action=1)

    def test_family(self):
        assert StatisticSpec("por_upper", ranking=(2, 1)).family == "por"
        assert StatisticSpec.roe(1).family == "roe"

    def test_describe(self):
        assert StatisticSpec.por((2, 1)).describe() == "por([2, 1])"
        assert StatisticSpec.pob(3).describe() == "pob(3)"


class TestEvaluateStatistic:
    def test_dispatch_matches_direct_calls(self, rng):
        study = random_study(rng, k=3, n=30)
        order = (3, 1, 2)
        assert evaluate_statistic(study, StatisticSpec.por(order)) == estimate_por(
            study, order
        ).value
        assert evaluate_statistic(study, StatisticSpec.pob(2)) == estimate_pob(
            study, 2
        ).value
        assert evaluate_statistic(study, StatisticSpec.roe(1)) == float(
            study.arm(1).values.mean()
        )
        interval = por_bounds(study, order)
        assert (
            evaluate_statistic(study, StatisticSpec("por_lower", ranking=order))
            == interval.lower
        )
        assert (
            evaluate_statistic(study, StatisticSpec("por_upper", ranking=order))
            == interval.upper
        )
        pob_interval = pob_bounds(study, 2, GridConfig.uniform(64))
        assert (
            evaluate_statistic(
                study, StatisticSpec("pob_upper", action=2), GridConfig.uniform(64)
            )
            == pob_interval.upper
        )
