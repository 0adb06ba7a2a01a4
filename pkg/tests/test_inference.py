import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fuzzyfusion.inference import (
    ANTECEDENTS,
    LARGE,
    SMALL,
    LinguisticPair,
    RuleBase,
    infer,
    membership,
    rule_activation,
)

UNIT = LinguisticPair(0.0, 1.0)

finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False)


class TestLinguisticPair:
    def test_invalid_universe_rejected(self):
        with pytest.raises(ValueError):
            LinguisticPair(1.0, 1.0)
        with pytest.raises(ValueError):
            LinguisticPair(2.0, -1.0)

    def test_left_shoulder_saturation(self):
        assert membership(UNIT, 0.0, SMALL) == 1.0
        assert membership(UNIT, 0.0, LARGE) == 0.0

    def test_linear_complement(self):
        assert membership(UNIT, 0.25, SMALL) == 0.75

    def test_clamping_outside_universe(self):
        assert membership(UNIT, 1.2, SMALL) == 0.0
        assert membership(UNIT, -0.3, LARGE) == 0.0

    def test_unknown_set_rejected(self):
        with pytest.raises(ValueError):
            membership(UNIT, 0.5, "medium")

    @given(finite)
    def test_partition_sums_to_one(self, x):
        pair = LinguisticPair(-2.0, 3.0)
        assert pair.membership_small(x) + pair.membership_large(x) == 1.0

    @given(finite, finite, finite)
    def test_partition_sums_to_one_any_universe(self, lo, span, x):
        pair = LinguisticPair(lo, lo + max(abs(span), 1e-3))
        assert pair.membership_small(x) + pair.membership_large(x) == 1.0


class TestRuleActivation:
    def test_both_fully_small(self):
        assert rule_activation((SMALL, SMALL), (1.0, 0.0), (1.0, 0.0)) == 1.0

    def test_exact_antecedent_match(self):
        assert rule_activation((SMALL, LARGE), (1.0, 0.0), (0.0, 1.0)) == 1.0

    def test_product_tnorm_half_degrees(self):
        # hand evaluation: 0.5 * 0.5
        assert rule_activation((LARGE, LARGE), (0.5, 0.5), (0.5, 0.5)) == 0.25

    @given(st.floats(0, 1), st.floats(0, 1))
    def test_activations_sum_to_one(self, u, v):
        dd = (1.0 - u, u)
        sd = (1.0 - v, v)
        total = sum(rule_activation(k, dd, sd) for k in ANTECEDENTS)
        assert abs(total - 1.0) < 1e-12


class TestRuleBase:
    def test_defaults_valid(self):
        rules = RuleBase()
        assert rules.w1_consequents[(SMALL, SMALL)] == 0.25
        assert rules.drift_consequents[(SMALL, LARGE)] == 1.0

    def test_missing_rule_rejected(self):
        w1 = {k: v for k, v in RuleBase().w1_consequents.items() if k != (SMALL, SMALL)}
        with pytest.raises(ValueError):
            RuleBase(w1_consequents=w1)

    def test_w1_ordering_enforced(self):
        w1 = dict(RuleBase().w1_consequents)
        w1[(LARGE, SMALL)] = 0.5  # breaks (large,small) < (small,small)
        with pytest.raises(ValueError):
            RuleBase(w1_consequents=w1)

    def test_drift_shape_enforced(self):
        drift = dict(RuleBase().drift_consequents)
        drift[(LARGE, LARGE)] = 0.5  # no longer equal elsewhere
        with pytest.raises(ValueError):
            RuleBase(drift_consequents=drift)

    def test_out_of_range_consequent_rejected(self):
        w1 = dict(RuleBase().w1_consequents)
        w1[(LARGE, LARGE)] = 1.5
        with pytest.raises(ValueError):
            RuleBase(w1_consequents=w1)


class TestInfer:
    def test_corner_small_small(self):
        w1, drift = infer(RuleBase(), 0.0, 0.0)
        assert w1 == pytest.approx(0.25, abs=1e-15)
        assert drift == pytest.approx(0.0, abs=1e-15)

    def test_corner_small_large(self):
        w1, drift = infer(RuleBase(), 0.0, 1.0)
        assert w1 == pytest.approx(0.75, abs=1e-15)
        assert drift == pytest.approx(1.0, abs=1e-15)

    def test_corner_large_large(self):
        w1, drift = infer(RuleBase(), 1.0, 1.0)
        assert w1 == pytest.approx(0.95, abs=1e-15)
        assert drift == pytest.approx(0.0, abs=1e-15)

    def test_center_average_at_midpoint(self):
        # all four activations are 0.25: w1 = (0.25+0.75+0.05+0.95)/4
        w1, drift = infer(RuleBase(), 0.5, 0.5)
        assert w1 == pytest.approx(0.50, abs=1e-15)
        assert drift == pytest.approx(0.25, abs=1e-15)

    @given(st.floats(0, 1), st.floats(0, 1))
    def test_outputs_within_consequent_hull(self, u, v):
        rules = RuleBase()
        w1, drift = infer(rules, u, v)
        assert min(rules.w1_consequents.values()) - 1e-12 <= w1
        assert w1 <= max(rules.w1_consequents.values()) + 1e-12
        assert -1e-12 <= drift <= 1.0 + 1e-12

    def test_closed_form_surfaces_on_grid(self):
        # independent bilinear oracle, defaults:
        #   w1(u,v)    = 0.25(1-u)(1-v) + 0.75(1-u)v + 0.05u(1-v) + 0.95uv
        #   drift(u,v) = (1-u) v
        rules = RuleBase()
        grid = np.linspace(0.0, 1.0, 101)
        for u in grid:
            for v in grid:
                w1, drift = infer(rules, u, v)
                w1_oracle = (
                    0.25 * (1 - u) * (1 - v)
                    + 0.75 * (1 - u) * v
                    + 0.05 * u * (1 - v)
                    + 0.95 * u * v
                )
                assert abs(w1 - w1_oracle) < 1e-12
                assert abs(drift - (1 - u) * v) < 1e-12

    def test_monotonicity_on_grid(self):
        rules = RuleBase()
        grid = np.linspace(0.0, 1.0, 101)
        for u in grid:
            w1_along_v = [infer(rules, u, v)[0] for v in grid]
            assert all(a < b for a, b in zip(w1_along_v, w1_along_v[1:]))
        w1_v0 = [infer(rules, u, 0.0)[0] for u in grid]
        assert all(a > b for a, b in zip(w1_v0, w1_v0[1:]))
        w1_v1 = [infer(rules, u, 1.0)[0] for u in grid]
        assert all(a < b for a, b in zip(w1_v1, w1_v1[1:]))
