"""Fusion of a wideband noisy reading with an accurate slow reading.

Per sample the aggregator normalizes the reading gap |s1 - s2| and the slow
sensor's slope |ds2/dt| into [0, 1], infers the wideband sensor's weight and
a drift level from the rule base, forms the weighted average, adds the
signed drift correction, and finally blends in an externally supplied
prediction when it agrees with the rule-based output closely enough.
"""

from dataclasses import dataclass, field

from fuzzyfusion.inference import RuleBase, infer


@dataclass
class AggregatorConfig:
    diff_range: float = 0.08  # normalization span for |s1 - s2|, signal units
    slope_range: float = 0.1  # normalization span for |ds2/dt|, signal units/s
    drift_gain: float = 0.05  # scales the drift level into signal units
    gate_tolerance: float = 0.1  # max |prediction - rule-based output| accepted
    sample_period: float = 0.01  # seconds between samples
    rules: RuleBase = field(default_factory=RuleBase)

    def __post_init__(self):
        for name in ("diff_range", "slope_range", "gate_tolerance", "sample_period"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be strictly positive")
        if self.drift_gain < 0.0:
            raise ValueError("drift_gain must be non-negative")


@dataclass
class AggregatorState:
    """Memory between samples: the previous slow-sensor value, None initially."""

    prev_s2: float | None = None


@dataclass
class FusionStepRecord:
    u: float  # normalized |s1 - s2|
    v: float  # normalized |ds2/dt|
    slope_sign: int  # -1, 0 or +1
    w1: float  # inferred wideband-sensor weight
    drift: float  # drift correction magnitude, signal units
    fused_pre_gate: float  # weighted average plus signed drift
    estimate: float  # final output after prediction gating
    prediction_used: bool


def preprocess(s1: float, s2: float, state: AggregatorState, cfg: AggregatorConfig):
    """Normalize the reading gap and slow-sensor slope; slope is 0 on the first sample."""
    u = min(abs(s1 - s2) / cfg.diff_range, 1.0)
    if state.prev_s2 is None:
        slope = 0.0
    else:
        slope = (s2 - state.prev_s2) / cfg.sample_period
    v = min(abs(slope) / cfg.slope_range, 1.0)
    slope_sign = 1 if slope > 0.0 else (-1 if slope < 0.0 else 0)
    return u, v, slope_sign


def fuse(s1: float, s2: float, w1: float) -> float:
    """Weighted average with normalized weights, w2 = 1 - w1."""
    return w1 * s1 + (1.0 - w1) * s2


def apply_drift(fused: float, drift_norm: float, slope_sign: int, cfg: AggregatorConfig) -> float:
    """Shift the fused value along the current slope direction."""
    return fused + slope_sign * cfg.drift_gain * drift_norm


def gate_prediction(agg_out: float, prediction, cfg: AggregatorConfig):
    """Average in the prediction unless it disagrees beyond the tolerance.

    Returns (estimate, prediction_used).
    """
    if prediction is None:
        return agg_out, False
    if abs(prediction - agg_out) > cfg.gate_tolerance:
        return agg_out, False
    return 0.5 * (agg_out + prediction), True


def step(
    state: AggregatorState,
    s1: float,
    s2: float,
    prediction,
    cfg: AggregatorConfig,
) -> FusionStepRecord:
    """Run one full fusion step and advance the state.

    prediction is the externally supplied forecast for this sample, or None.
    """
    u, v, slope_sign = preprocess(s1, s2, state, cfg)
    w1, drift_norm = infer(cfg.rules, u, v)
    fused = fuse(s1, s2, w1)
    drift = cfg.drift_gain * drift_norm
    fused_pre_gate = apply_drift(fused, drift_norm, slope_sign, cfg)
    estimate, prediction_used = gate_prediction(fused_pre_gate, prediction, cfg)
    state.prev_s2 = s2
    return FusionStepRecord(
        u=u,
        v=v,
        slope_sign=slope_sign,
        w1=w1,
        drift=drift,
        fused_pre_gate=fused_pre_gate,
        estimate=estimate,
        prediction_used=prediction_used,
    )
