import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from porpob import (
    ArmSamples,
    EmpiricalCdf,
    IntervalEstimate,
    PoMatrix,
    StudyData,
    ValidationError,
    ecdf_eval,
    empirical_quantile,
    order_statistic_index,
    validate_ranking,
)

finite_floats = st.floats(
    min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False
)
arm_values = st.lists(finite_floats, min_size=1, max_size=60)


class TestEcdfEval:
    arm = ArmSamples(1, [1.0, 2.0, 3.0])

    def test_counts_values_at_or_below(self):
        assert ecdf_eval(self.arm, 2.0) == 2 / 3

    def test_zero_below_minimum(self):
        assert ecdf_eval(self.arm, 0.5) == 0.0

    def test_one_at_maximum(self):
        assert ecdf_eval(self.arm, 3.0) == 1.0
        assert ecdf_eval(self.arm, 100.0) == 1.0

    def test_array_argument(self):
        out = ecdf_eval(self.arm, np.array([0.0, 1.0, 2.5]))
        assert np.array_equal(out, np.array([0.0, 1 / 3, 2 / 3]))

    def test_step_heights_exact_for_distinct_values(self):
        arm = ArmSamples(1, [4.0, 7.0, 9.0, 12.0, 20.0])
        for i in range(1, arm.n + 1):
            assert ecdf_eval(arm, arm.values[i - 1]) == i / arm.n

    def test_callable_view(self):
        cdf = EmpiricalCdf(self.arm)
        assert cdf(2.0) == 2 / 3
        assert cdf.inverse(2 / 3) == 3.0


class TestEmpiricalQuantile:
    arm = ArmSamples(1, [10.0, 20.0, 30.0])

    def test_order_statistic_index(self):
        assert empirical_quantile(self.arm, 2 / 3) == 30.0

    def test_zero_maps_to_minimum(self):
        assert empirical_quantile(self.arm, 0.0) == 10.0

    def test_one_clamps_to_maximum(self):
        assert empirical_quantile(self.arm, 1.0) == 30.0

    def test_rational_product_snaps(self):
        # 3 * (1/3) rounds below 1.0 in floats; the index must still be 2.
        assert empirical_quantile(self.arm, 1 / 3) == 20.0

    @pytest.mark.parametrize("p", [-0.1, 1.1, 2.0])
    def test_rejects_out_of_range(self, p):
        with pytest.raises(ValidationError):
            empirical_quantile(self.arm, p)


@given(values=arm_values, y1=finite_floats, y2=finite_floats)
@settings(max_examples=200, deadline=None)
def test_ecdf_nondecreasing(values, y1, y2):
    arm = ArmSamples(1, values)
    lo, hi = min(y1, y2), max(y1, y2)
    assert ecdf_eval(arm, lo) <= ecdf_eval(arm, hi)


@given(
    values=arm_values,
    p1=st.floats(0, 1, allow_nan=False),
    p2=st.floats(0, 1, allow_nan=False),
)
@settings(max_examples=200, deadline=None)
def test_quantile_nondecreasing(values, p1, p2):
    arm = ArmSamples(1, values)
    lo, hi = min(p1, p2), max(p1, p2)
    assert empirical_quantile(arm, lo) <= empirical_quantile(arm, hi)


@given(values=arm_values, y=finite_floats)
@settings(max_examples=300, deadline=None)
def test_quantile_of_cdf_dominates_point(values, y):
    arm = ArmSamples(1, values)
    if y < arm.values[-1]:
        assert empirical_quantile(arm, ecdf_eval(arm, y)) >= y


class TestOrderStatisticIndex:
    def test_ceiling_semantics(self):
        assert order_statistic_index(1000, 0.0251) == 26
        assert order_statistic_index(1000, 0.975) == 975
        assert order_statistic_index(10, 0.0) == 1
        assert order_statistic_index(10, 1.0) == 10

    def test_snaps_float_artifacts(self):
        # (1 - 0.95) / 2 computes one ulp above 0.025; the index must not
        # drift to 26.
        alpha = (1.0 - 0.95) / 2.0
        assert order_statistic_index(1000, alpha) == 25

    def test_rejects_out_of_range(self):
        with pytest.raises(ValidationError):
            order_statistic_index(10, 1.5)


class TestArmSamples:
    def test_sorts_input(self):
        arm = ArmSamples(1, [3.0, 1.0, 2.0])
        assert list(arm.values) == [1.0, 2.0, 3.0]
        assert arm.n == 3

    def test_values_read_only(self):
        arm = ArmSamples(1, [1.0, 2.0])
        with pytest.raises(ValueError):
            arm.values[0] = 5.0

    def test_rejects_empty(self):
        with pytest.raises(ValidationError):
            ArmSamples(1, [])

    def test_rejects_nan_and_inf(self):
        with pytest.raises(ValidationError):
            ArmSamples(1, [1.0, float("nan")])
        with pytest.raises(ValidationError):
            ArmSamples(1, [1.0, float("inf")])

    def test_keeps_duplicates(self):
        arm = ArmSamples(1, [2.0, 2.0, 1.0])
        assert list(arm.values) == [1.0, 2.0, 2.0]


class TestStudyData:
    def test_requires_two_arms(self):
        with pytest.raises(ValidationError):
            StudyData.from_arrays({1: [1.0, 2.0]})

    def test_requires_contiguous_ids(self):
        with pytest.raises(ValidationError):
            StudyData.from_arrays({1: [1.0, 2.0], 3: [1.0, 2.0]})

    def test_requires_two_samples_per_arm(self):
        with pytest.raises(ValidationError):
            StudyData.from_arrays({1: [1.0, 2.0], 2: [1.0]})

    def test_arm_lookup(self):
        study = StudyData.from_arrays({1: [1.0, 2.0], 2: [3.0, 4.0]})
        assert study.k == 2
        assert study.actions == (1, 2)
        assert study.arm(2).n == 2
        with pytest.raises(KeyError):
            study.arm(3)

    def test_mismatched_action_id(self):
        with pytest.raises(ValidationError):
            StudyData({1: ArmSamples(2, [1.0, 2.0]), 2: ArmSamples(1, [1.0, 2.0])})


class TestPoMatrix:
    def test_shape_and_accessors(self):
        matrix = PoMatrix([[1.0, 2.0], [3.0, 4.0], [5.0, 6.0]])
        assert matrix.n_subjects == 3
        assert matrix.k == 2
        assert matrix.tie_row_count == 0

    def test_flags_tied_rows(self):
        matrix = PoMatrix([[1.0, 1.0, 3.0], [1.0, 2.0, 3.0]])
        assert matrix.tie_row_count == 1

    def test_rejects_bad_shapes(self):
        with pytest.raises(ValidationError):
            PoMatrix([[1.0], [2.0]])
        with pytest.raises(ValidationError):
            PoMatrix(np.zeros((0, 3)))
        with pytest.raises(ValidationError):
            PoMatrix([[1.0, float("nan")]])


class TestIntervalEstimate:
    def test_valid(self):
        interval = IntervalEstimate(0.25, 0.75)
        assert interval.width == 0.5

    @pytest.mark.parametrize("lo,hi", [(-0.1, 0.5), (0.5, 1.1), (0.7, 0.3)])
    def test_invalid(self, lo, hi):
        with pytest.raises(ValidationError):
            IntervalEstimate(lo, hi)


class TestValidateRanking:
    def test_accepts_permutation(self):
        assert validate_ranking([3, 1, 2], 3) == (3, 1, 2)

    @pytest.mark.parametrize("order", [(1, 2), (1, 2, 2), (1, 2, 4), (0, 1, 2)])
    def test_rejects_non_permutations(self, order):
        with pytest.raises(ValidationError):
            validate_ranking(order, 3)
