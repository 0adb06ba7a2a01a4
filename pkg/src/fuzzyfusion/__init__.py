"""Fuzzy two-sensor data fusion with online prediction.

Combines a wideband-but-noisy sensor with an accurate-but-slow sensor into
a single estimate via a rule-based fuzzy weighting stage, optionally refined
by an online-trained fuzzy predictor, and ships the inverted-pendulum
closed-loop benchmark used to evaluate the scheme.
"""

from fuzzyfusion.aggregator import (
    AggregatorConfig,
    AggregatorState,
    FusionStepRecord,
    apply_drift,
    fuse,
    gate_prediction,
    preprocess,
    step,
)
from fuzzyfusion.inference import LinguisticPair, RuleBase, infer
from fuzzyfusion.metrics import MetricsReport, iae, itae, peak_to_peak_tail, summarize
from fuzzyfusion.pendulum import (
    BenchmarkConfig,
    PendulumFellError,
    PendulumState,
    Trajectory,
    simulate,
)
from fuzzyfusion.predictor import (
    DegenerateEvaluationError,
    OnlinePredictor,
    PredictorConfig,
    PredictorParams,
)
from fuzzyfusion.sensors import SlowSensorState, WidebandSensorSpec

__version__ = "0.1.0"

__all__ = [
    "AggregatorConfig",
    "AggregatorState",
    "BenchmarkConfig",
    "DegenerateEvaluationError",
    "FusionStepRecord",
    "LinguisticPair",
    "MetricsReport",
    "OnlinePredictor",
    "PendulumFellError",
    "PendulumState",
    "PredictorConfig",
    "PredictorParams",
    "RuleBase",
    "SlowSensorState",
    "Trajectory",
    "WidebandSensorSpec",
    "apply_drift",
    "fuse",
    "gate_prediction",
    "iae",
    "infer",
    "itae",
    "peak_to_peak_tail",
    "preprocess",
    "simulate",
    "step",
    "summarize",
]
