"""Two-input fuzzy inference with complementary small/large partitions.

Each input carries exactly two linguistic sets, "small" and "large", whose
memberships sum to one everywhere on the (clamped) universe.  Rules are
conjunctions of one set per input, combined with the product t-norm, and
defuzzified as a center average over singleton consequents.  Because the
partitions are complementary the four rule activations always sum to one,
so the center average never divides by zero.
"""

from dataclasses import dataclass, field

SMALL = "small"
LARGE = "large"

# (diff set, slope set), fixed iteration order for determinism
ANTECEDENTS = (
    (SMALL, SMALL),
    (SMALL, LARGE),
    (LARGE, SMALL),
    (LARGE, LARGE),
)


@dataclass(frozen=True)
class LinguisticPair:
    """A complementary small/large partition over [universe_min, universe_max]."""

    universe_min: float
    universe_max: float

    def __post_init__(self):
        if not self.universe_max > self.universe_min:
            raise ValueError(
                f"universe_max ({self.universe_max}) must exceed "
                f"universe_min ({self.universe_min})"
            )

    def normalize(self, x: float) -> float:
        """Clamp x into the universe and map it to [0, 1]."""
        u = (x - self.universe_min) / (self.universe_max - self.universe_min)
        return min(max(u, 0.0), 1.0)

    def membership_small(self, x: float) -> float:
        return 1.0 - self.normalize(x)

    def membership_large(self, x: float) -> float:
        return self.normalize(x)


def membership(pair: LinguisticPair, x: float, which: str) -> float:
    """Degree of x in the given set ("small" or "large") of the pair."""
    if which == SMALL:
        return pair.membership_small(x)
    if which == LARGE:
        return pair.membership_large(x)
    raise ValueError(f"unknown linguistic set {which!r}")


def rule_activation(rule_key, diff_degrees, slope_degrees) -> float:
    """Product conjunction of the two antecedent degrees selected by rule_key.

    diff_degrees and slope_degrees are (small, large) tuples of memberships.
    """
    diff_set, slope_set = rule_key
    d = diff_degrees[0] if diff_set == SMALL else diff_degrees[1]
    s = slope_degrees[0] if slope_set == SMALL else slope_degrees[1]
    return d * s


def _default_w1():
    return {
        (SMALL, SMALL): 0.25,
        (SMALL, LARGE): 0.75,
        (LARGE, SMALL): 0.05,
        (LARGE, LARGE): 0.95,
    }


def _default_drift():
    return {
        (SMALL, SMALL): 0.0,
        (SMALL, LARGE): 1.0,
        (LARGE, SMALL): 0.0,
        (LARGE, LARGE): 0.0,
    }


@dataclass
class RuleBase:
    """Singleton consequents for the sensor-weight and drift outputs.

    The weight consequents must respect the ordering
    (large, small) < (small, small) < (small, large) < (large, large):
    a large reading gap with a flat slow sensor means the wideband sensor is
    unreliable, while a large gap during fast motion means it is the only
    sensor keeping up.  The drift consequent peaks only at (small, large),
    the one combination where both sensors likely sit on the same side of
    the true signal, and is flat elsewhere.
    """

    w1_consequents: dict = field(default_factory=_default_w1)
    drift_consequents: dict = field(default_factory=_default_drift)

    def __post_init__(self):
        for name, table in (
            ("w1_consequents", self.w1_consequents),
            ("drift_consequents", self.drift_consequents),
        ):
            if set(table) != set(ANTECEDENTS):
                raise ValueError(f"{name} must contain exactly the 4 antecedent pairs")
            if not all(0.0 <= c <= 1.0 for c in table.values()):
                raise ValueError(f"{name} values must lie in [0, 1]")
        w = self.w1_consequents
        if not (
            w[(LARGE, SMALL)] < w[(SMALL, SMALL)] < w[(SMALL, LARGE)] < w[(LARGE, LARGE)]
        ):
            raise ValueError(
                "w1 consequents must be ordered "
                "(large,small) < (small,small) < (small,large) < (large,large)"
            )
        d = self.drift_consequents
        others = [d[k] for k in ANTECEDENTS if k != (SMALL, LARGE)]
        if not (d[(SMALL, LARGE)] > max(others) and min(others) == max(others)):
            raise ValueError(
                "drift consequent must be maximal only at (small,large) "
                "and equal elsewhere"
            )


# Unit universe used once inputs are already normalized.
_UNIT = LinguisticPair(0.0, 1.0)


def infer(rules: RuleBase, u: float, v: float):
    """Evaluate the rule base on normalized inputs u, v in [0, 1].

    Returns (w1_norm, drift_norm), both center averages in [0, 1].
    """
    diff_degrees = (_UNIT.membership_small(u), _UNIT.membership_large(u))
    slope_degrees = (_UNIT.membership_small(v), _UNIT.membership_large(v))
    w1_acc = 0.0
    drift_acc = 0.0
    act_sum = 0.0
    for key in ANTECEDENTS:
        act = rule_activation(key, diff_degrees, slope_degrees)
        act_sum += act
        w1_acc += act * rules.w1_consequents[key]
        drift_acc += act * rules.drift_consequents[key]
    # act_sum == 1 for complementary partitions; keep the division so that
    # user-supplied rule bases on other partitions stay well defined.
    return w1_acc / act_sum, drift_acc / act_sum
