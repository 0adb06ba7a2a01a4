"""One-step-ahead signal prediction with an online-trained fuzzy system.

The predictor is a bank of Gaussian rules over a sliding window of the
fused signal: rule l holds one center and one width per input dimension
plus a scalar output height, and the output is the firing-strength-weighted
average of the heights.  Every sampling period the newest window is used to
drag all parameters down the squared-error gradient (heights, centers and
widths updated simultaneously from the same pre-update firing strengths),
and the window shifted by one sample yields the forecast for the upcoming
value.
"""

from collections import deque
from dataclasses import dataclass

import numpy as np


class DegenerateEvaluationError(RuntimeError):
    """All rule firing strengths underflowed to zero.

    Happens when the widths have collapsed or the inputs moved far outside
    the trained region; callers should treat the prediction as unavailable.
    """


@dataclass
class PredictorConfig:
    window_len: int = 20  # inputs are window_len - 1 samples, target is the last
    rule_count: int = 10
    learn_rate: float = 0.045  # gradient step length
    error_threshold: float = 1e-8  # stop training once 0.5*(f - target)^2 drops below
    max_iters: int = 75  # per-sample training cap
    width_floor: float = 1e-3  # smallest admissible Gaussian width

    def __post_init__(self):
        if self.window_len < 2:
            raise ValueError("window_len must be at least 2")
        if self.rule_count < 1:
            raise ValueError("rule_count must be at least 1")
        for name in ("learn_rate", "error_threshold", "width_floor"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be strictly positive")
        if self.max_iters < 1:
            raise ValueError("max_iters must be at least 1")


@dataclass
class PredictorParams:
    """Trainable state: one row per rule, one column per input sample."""

    centers: np.ndarray  # (rule_count, window_len - 1)
    widths: np.ndarray  # (rule_count, window_len - 1), all >= width_floor
    heights: np.ndarray  # (rule_count,)
    config: PredictorConfig

    def __post_init__(self):
        self.centers = np.asarray(self.centers, dtype=float)
        self.widths = np.asarray(self.widths, dtype=float)
        self.heights = np.asarray(self.heights, dtype=float)
        m, n_in = self.config.rule_count, self.config.window_len - 1
        if self.centers.shape != (m, n_in) or self.widths.shape != (m, n_in):
            raise ValueError(f"centers/widths must have shape ({m}, {n_in})")
        if self.heights.shape != (m,):
            raise ValueError(f"heights must have shape ({m},)")
        if np.any(self.widths < self.config.width_floor):
            raise ValueError("all widths must be at least width_floor")

    @property
    def n_inputs(self) -> int:
        return self.centers.shape[1]


# Initial Gaussian width as a multiple of the seeding window's spread.
# Narrower starts (tried down to 0.5x) let the firing strengths collapse as
# the signal drifts, which sends the width-scaled gradient terms divergent.
WIDTH_INIT_SCALE = 2.0


def seed_params(window, cfg: PredictorConfig, rng: np.random.Generator) -> PredictorParams:
    """Build initial parameters from the first full window.

    Centers are jittered copies of the window's inputs (jitter scale 1% of
    the window span) so every rule starts in the populated region; heights
    start at the window's target; widths start at a multiple of the
    window's spread, floored.
    """
    window = np.asarray(window, dtype=float)
    if window.shape != (cfg.window_len,):
        raise ValueError(f"window must hold exactly {cfg.window_len} values")
    inputs, target = window[:-1], window[-1]
    jitter = 0.01 * (window.max() - window.min())
    centers = inputs[None, :] + rng.normal(0.0, 1.0, (cfg.rule_count, inputs.size)) * jitter
    width = max(WIDTH_INIT_SCALE * float(window.std()), cfg.width_floor)
    widths = np.full_like(centers, width)
    heights = np.full(cfg.rule_count, target)
    return PredictorParams(centers=centers, widths=widths, heights=heights, config=cfg)


def _forward(params: PredictorParams, x: np.ndarray):
    """Firing strengths, their sum, and the center-average output."""
    z = np.exp(-np.sum(((x - params.centers) / params.widths) ** 2, axis=1))
    b = float(z.sum())
    if b == 0.0:
        raise DegenerateEvaluationError(
            "all rule firing strengths underflowed to zero; "
            "widths collapsed or inputs far outside the trained region"
        )
    f = float(params.heights @ z) / b
    return f, z, b


def _as_inputs(params: PredictorParams, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (params.n_inputs,):
        raise ValueError(f"expected {params.n_inputs} inputs, got shape {x.shape}")
    return x


def evaluate(params: PredictorParams, x) -> float:
    """Output of the rule bank for one input vector of window_len - 1 samples."""
    f, _, _ = _forward(params, _as_inputs(params, x))
    return f


def _gradients(params: PredictorParams, x, f, z, b, target):
    # Partials of 0.5*(f - target)^2, all from the same pre-update f and z.
    err = f - target
    height_grad = err / b * z
    rule_gain = (err / b * (params.heights - f) * z)[:, None]
    diff = x - params.centers
    center_grad = rule_gain * 2.0 * diff / params.widths**2
    width_grad = rule_gain * 2.0 * diff**2 / params.widths**3
    return height_grad, center_grad, width_grad


def gradients(params: PredictorParams, x, target: float):
    """Analytic partials of the squared one-step error.

    Returns (height_grad, center_grad, width_grad) with the same shapes as
    the corresponding parameter arrays; grad_step descends along exactly
    these directions.
    """
    x = _as_inputs(params, x)
    f, z, b = _forward(params, x)
    return _gradients(params, x, f, z, b, target)


def _descend(params: PredictorParams, x, target, f, z, b):
    # One simultaneous update of heights, centers and widths.
    cfg = params.config
    height_grad, center_grad, width_grad = _gradients(params, x, f, z, b, target)
    params.heights = params.heights - cfg.learn_rate * height_grad
    params.centers = params.centers - cfg.learn_rate * center_grad
    params.widths = np.maximum(
        params.widths - cfg.learn_rate * width_grad, cfg.width_floor
    )


def grad_step(params: PredictorParams, x, target: float) -> float:
    """One gradient-descent update toward target; returns the pre-update error.

    The error is 0.5*(f - target)^2 with f evaluated before the update, and
    the returned value is exactly that pre-update error.
    """
    x = _as_inputs(params, x)
    f, z, b = _forward(params, x)
    _descend(params, x, target, f, z, b)
    return 0.5 * (f - target) ** 2


def train_on_window(params: PredictorParams, window) -> int:
    """Descend on (window[:-1] -> window[-1]) until converged or capped.

    Stops before applying an update once the error drops below
    error_threshold; returns the number of updates applied.
    """
    window = np.asarray(window, dtype=float)
    if window.shape != (params.config.window_len,):
        raise ValueError(f"window must hold exactly {params.config.window_len} values")
    x, target = window[:-1], window[-1]
    for iters in range(params.config.max_iters):
        f, z, b = _forward(params, x)
        if 0.5 * (f - target) ** 2 < params.config.error_threshold:
            return iters
        _descend(params, x, target, f, z, b)
    return params.config.max_iters


def predict_next(params: PredictorParams, window) -> float:
    """Forecast the sample after the window by evaluating on the shifted inputs."""
    window = np.asarray(window, dtype=float)
    if window.shape != (params.config.window_len,):
        raise ValueError(f"window must hold exactly {params.config.window_len} values")
    return evaluate(params, window[1:])


class OnlinePredictor:
    """Sliding-window driver: observe a sample, train, forecast the next one.

    `prediction` holds the forecast for the not-yet-seen sample, or None
    while the window is still filling or after a degenerate evaluation.
    Training runs on every observed sample once the window is full,
    regardless of whether the previous forecast was used downstream.
    """

    def __init__(self, config: PredictorConfig | None = None, rng=None):
        self.config = config if config is not None else PredictorConfig()
        self.rng = rng if rng is not None else np.random.default_rng()
        self.params: PredictorParams | None = None
        self.prediction: float | None = None
        self.degenerate_steps = 0
        self._window = deque(maxlen=self.config.window_len)

    def observe(self, value: float) -> None:
        self._window.append(float(value))
        if len(self._window) < self.config.window_len:
            return
        window = np.array(self._window)
        if self.params is None:
            self.params = seed_params(window, self.config, self.rng)
        try:
            train_on_window(self.params, window)
            forecast = predict_next(self.params, window)
        except DegenerateEvaluationError:
            self.prediction = None
            self.degenerate_steps += 1
            return
        if not np.isfinite(forecast) or not np.isfinite(self.params.heights).all():
            # training diverged; drop the bank and re-seed from the next window
            self.params = None
            self.prediction = None
            self.degenerate_steps += 1
            return
        self.prediction = forecast
