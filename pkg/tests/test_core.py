import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fgames import (AllZeroError, BinaryParam, ParseError, Pmf, ScaledVector,
                    Threshold, ValueRange, Window, index_states,
                    scaled_renormalize, truncate)
from fgames.core import (BinaryStates, InvalidThresholdError,
                         TruncatedPmf, WindowStates, truncation_weights)
from fgames import core


class TestPmf:
    def test_uniform(self):
        p = Pmf.uniform(1)
        assert np.allclose(p.p, [1 / 3, 1 / 3, 1 / 3])

    def test_sum_enforced(self):
        with pytest.raises(ValueError, match="sum"):
            Pmf(ValueRange(1), np.array([0.5, 0.3, 0.1]))

    def test_top_atom_must_be_positive(self):
        with pytest.raises(ValueError, match="p_n"):
            Pmf(ValueRange(1), np.array([0.5, 0.5, 0.0]))

    def test_negative_probability_rejected(self):
        with pytest.raises(ValueError):
            Pmf(ValueRange(1), np.array([-0.1, 0.6, 0.5]))

    def test_delta_n(self):
        p = Pmf.delta_n(5)
        assert p.prob(5) == 1.0
        assert p.prob(0) == 0.0

    def test_triangular_n1(self):
        # weights 1, 2, 3
        p = Pmf.triangular(1)
        assert np.allclose(p.p, [1 / 6, 2 / 6, 3 / 6])

    def test_cubic_weights(self):
        p = Pmf.cubic(1)
        assert np.allclose(p.p, np.array([1.0, 8.0, 27.0]) / 36.0)

    def test_bimodal_masses(self):
        p = Pmf.bimodal_uniform(2, 0.4)
        assert p.prob(1) == p.prob(2) == pytest.approx(0.2)
        assert p.prob(0) == p.prob(-1) == p.prob(-2) == pytest.approx(0.2)

    def test_cdf(self):
        p = Pmf.uniform(1)
        assert p.cdf(-1) == pytest.approx(1 / 3)
        assert p.cdf(1) == pytest.approx(1.0)

    def test_text_round_trip(self):
        p = Pmf.from_weights(2, [0.1, 0.2, 0.3, 0.25, 0.15])
        q = Pmf.from_text(p.to_text())
        assert q.n == p.n
        assert np.array_equal(q.p, p.p)

    @pytest.mark.parametrize("text,line", [
        ("", 1),
        ("m 1\n-1 0.3\n0 0.3\n1 0.4", 1),
        ("n 1\n-1 0.3\n0 0.3", 3),
        ("n 1\n-1 0.3\n0 0.3\n2 0.4", 4),
        ("n 1\n-1 0.3\n0 x\n1 0.4", 3),
        ("n 1\n-1 0.3\n0 0.3\n1 9.4", 4),
    ])
    def test_text_strict_validation(self, text, line):
        with pytest.raises(ParseError) as err:
            Pmf.from_text(text)
        assert err.value.line == line


class TestTruncate:
    def test_full_support_unchanged(self, uniform_n1):
        t = truncate(uniform_n1, -1)
        assert list(t.values()) == [-1, 0, 1]
        assert np.allclose(t.p, [1 / 3, 1 / 3, 1 / 3])

    def test_single_surviving_atom(self, uniform_n1):
        t = truncate(uniform_n1, 1)
        assert list(t.values()) == [1]
        assert t.p[0] == 1.0

    def test_renormalization(self):
        p = Pmf(ValueRange(1), np.array([0.5, 0.3, 0.2]))
        t = truncate(p, 0)
        assert np.allclose(t.p, [0.6, 0.4])

    def test_idempotent(self):
        p = Pmf.from_weights(2, [1, 2, 3, 4, 5])
        once = truncate(p, 0)
        twice = truncate(once, 0)
        assert np.allclose(once.p, twice.p)
        assert once.lower == twice.lower

    def test_zero_mass_unreachable_via_pmf(self):
        # p_n > 0 makes every truncation well defined; the defensive error
        # still fires for a hand-built zero tail.
        from fgames.core import ZeroMassError
        broken = TruncatedPmf(0, 1, np.array([1.0, 0.0]))
        with pytest.raises(ZeroMassError):
            truncate(broken, 1)

    @given(st.integers(-2, 2))
    def test_truncated_sums_to_one_and_zero_below(self, lower):
        p = Pmf.from_weights(2, [0.05, 0.1, 0.15, 0.3, 0.4])
        t = truncate(p, lower)
        assert math.isclose(t.p.sum(), 1.0, abs_tol=1e-12)
        assert t.lower == lower

    def test_weights_matrix_rows_normalized(self):
        p = Pmf.from_weights(2, [1, 2, 3, 4, 5])
        W = truncation_weights(p)
        assert np.allclose(W.sum(axis=1), 1.0)
        # row of parent x carries zero mass below -x
        assert W[-2 + 2, :4].sum() == 0.0  # x = -2 truncates to {2}
        assert W[-1 + 2, :3].sum() == 0.0  # x = -1 truncates to {1, 2}
        assert np.allclose(W[2 + 2], p.p)  # x = n: truncation is vacuous


class TestScaledVector:
    def test_renormalize_by_max(self):
        v = scaled_renormalize(ScaledVector(np.array([2.0, 4.0]), 0.0))
        assert np.allclose(v.significands, [0.5, 1.0])
        assert v.log_scale == pytest.approx(math.log(4))

    def test_already_normalized(self):
        v = ScaledVector(np.array([1.0]), 3.0)
        w = scaled_renormalize(v)
        assert w.significands[0] == 1.0 and w.log_scale == 3.0

    def test_underflow_rescue(self):
        v = scaled_renormalize(ScaledVector(np.array([1e-300, 1e-300]), 0.0))
        assert np.allclose(v.significands, [1.0, 1.0])
        assert v.log_scale == pytest.approx(math.log(1e-300))

    def test_all_zero_error(self):
        with pytest.raises(AllZeroError):
            scaled_renormalize(ScaledVector(np.zeros(3), 0.0))

    def test_renormalize_preserves_values(self):
        v = ScaledVector(np.array([3.0, 7.0, 0.25]), 2.5)
        w = scaled_renormalize(v)
        for i in range(3):
            assert w.log_value(i) == pytest.approx(v.log_value(i), rel=1e-14)

    @settings(max_examples=50)
    @given(st.lists(st.floats(min_value=1e-12, max_value=1e12), min_size=1,
                    max_size=8))
    def test_log_round_trip(self, sig):
        v = ScaledVector(np.array(sig), 1.25)
        back = ScaledVector.from_log_values(v.to_log_values())
        for i in range(v.dim):
            assert back.log_value(i) == pytest.approx(v.log_value(i), rel=1e-12)

    def test_round_trip_with_zero_component(self):
        v = ScaledVector(np.array([0.0, 2.0]), 0.5)
        back = ScaledVector.from_log_values(v.to_log_values())
        assert back.significands[0] == 0.0
        assert back.log_value(1) == pytest.approx(v.log_value(1), rel=1e-12)


class TestStateIndexing:
    def test_ab_n1_count(self):
        # 3 values x 3 active windows
        idx = index_states(WindowStates(), ValueRange(1))
        assert idx.size == 9

    def test_test_n1_count(self):
        # thresholds {1, 0} x 3 values
        idx = index_states(core.TestStates(1), ValueRange(1))
        assert idx.size == 6
        thresholds = {t for _, t in idx.states}
        assert thresholds == {1, 0}

    def test_ab_n5_count(self):
        idx = index_states(WindowStates(), ValueRange(5))
        assert idx.size == 605

    def test_binary_states(self):
        idx = index_states(BinaryStates(), ValueRange(1))
        assert idx.states == (0, 1)

    @pytest.mark.parametrize("kind", [core.TestStates(1), core.TestStates(-1),
                                      WindowStates(), BinaryStates()])
    def test_bijection(self, kind):
        idx = index_states(kind, ValueRange(2))
        for i, state in enumerate(idx.states):
            assert idx.index_of(state) == i
            assert idx.state_of(i) == state

    def test_full_window_layout(self):
        idx = index_states(WindowStates(), ValueRange(2))
        for x in range(-2, 3):
            assert idx.state_of(idx.full_window_index(x)) == (x, -2, 2)

    def test_invalid_threshold(self):
        with pytest.raises(InvalidThresholdError):
            index_states(core.TestStates(-1), ValueRange(1))


class TestWindowsAndThresholds:
    @given(st.integers(-5, 5), st.integers(-5, 5))
    def test_negation_preserves_activeness(self, a, b):
        w = Window(a, b)
        assert w.negated().is_active == w.is_active
        assert w.negated().negated() == w

    def test_threshold_range(self):
        Threshold(1).validate(ValueRange(1))
        Threshold(0).validate(ValueRange(1))
        with pytest.raises(InvalidThresholdError):
            Threshold(-1).validate(ValueRange(1))
        with pytest.raises(InvalidThresholdError):
            Threshold(2).validate(ValueRange(1))

    def test_threshold_partner(self):
        assert Threshold(1).partner == 0
        assert Threshold(-2).partner == 3

    def test_binary_param_bounds(self):
        BinaryParam(0.0)
        BinaryParam(1.0)
        with pytest.raises(ValueError):
            BinaryParam(1.5)
