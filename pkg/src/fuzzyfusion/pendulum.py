"""Closed-loop inverted-pendulum benchmark for the fusion pipeline.

A pole balances on a cart driven by a PID controller whose angle feedback
comes from a selectable measurement pipeline: the true angle, either sensor
alone, their plain average, the fuzzy-fused estimate, or fusion plus the
online predictor.  The loop starts tilted, must regulate the angle to zero,
and takes an extra cart-force kick partway through the run.  Dynamics are
the standard nonlinear cart-pole equations integrated with fixed-step
fourth-order Runge-Kutta; everything is deterministic given the seed.
"""

import math
from dataclasses import dataclass

import numpy as np

from fuzzyfusion.aggregator import AggregatorConfig, AggregatorState
from fuzzyfusion.aggregator import step as aggregator_step
from fuzzyfusion.predictor import OnlinePredictor, PredictorConfig
from fuzzyfusion.sensors import (
    SlowSensorState,
    WidebandSensorSpec,
    sample_wideband,
    step_lowpass,
)

FEEDBACK_MODES = ("ideal", "s1_only", "s2_only", "average", "fused", "fused_predictor")

FALL_ANGLE = math.pi / 2  # abort once the pole passes horizontal


@dataclass
class PendulumState:
    theta: float = 0.0  # rad, 0 is upright, positive leans toward +x
    theta_dot: float = 0.0  # rad/s
    cart_x: float = 0.0  # m
    cart_v: float = 0.0  # m/s


@dataclass
class BenchmarkConfig:
    cart_mass: float = 0.5  # kg
    pole_mass: float = 0.2  # kg
    # a long pole keeps the open-loop escape rate near 1 rad/s, slow enough
    # that a half-second feedback lag rings instead of toppling immediately
    pole_half_length: float = 8.0  # m, pivot to center of mass
    gravity: float = 9.81  # m/s^2
    cart_friction: float = 0.1  # N*s/m, viscous on the cart
    kp: float = 40.0
    ki: float = 0.5
    kd: float = 18.0
    derivative_filter: float = 0.05  # s, first-order smoothing of the D term; 0 disables
    force_limit: float = 50.0  # N
    dt: float = 0.01  # s
    duration: float = 50.0  # s
    initial_theta: float = 0.1  # rad
    disturbance_time: float = 25.0  # s
    disturbance_force: float = 1.0  # N, extra cart force
    disturbance_duration: float = 0.1  # s

    def __post_init__(self):
        for name in ("cart_mass", "pole_mass", "pole_half_length", "force_limit", "duration"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be strictly positive")
        if self.cart_friction < 0.0:
            raise ValueError("cart_friction must be non-negative")
        if not 0.0 < self.dt <= 0.02:
            raise ValueError("dt must lie in (0, 0.02] for the fixed-step loop")
        if not self.disturbance_time < self.duration:
            raise ValueError("disturbance_time must fall within the run")
        if self.disturbance_duration < 0.0:
            raise ValueError("disturbance_duration must be non-negative")
        if self.derivative_filter < 0.0:
            raise ValueError("derivative_filter must be non-negative")
        if abs(self.initial_theta) >= FALL_ANGLE:
            raise ValueError("initial_theta must start above horizontal")


class PendulumFellError(RuntimeError):
    """The pole passed horizontal; carries the partial trajectory."""

    def __init__(self, time: float, trajectory):
        super().__init__(f"pendulum fell at t = {time:.2f} s")
        self.time = time
        self.trajectory = trajectory


def dynamics(state: PendulumState, force: float, cfg: BenchmarkConfig):
    """Time derivatives (theta_dot, theta_ddot, cart_v, cart_accel)."""
    sin = math.sin(state.theta)
    cos = math.cos(state.theta)
    total_mass = cfg.cart_mass + cfg.pole_mass
    half_len = cfg.pole_half_length
    temp = (
        force
        + cfg.pole_mass * half_len * state.theta_dot**2 * sin
        - cfg.cart_friction * state.cart_v
    ) / total_mass
    theta_ddot = (cfg.gravity * sin - cos * temp) / (
        half_len * (4.0 / 3.0 - cfg.pole_mass * cos**2 / total_mass)
    )
    cart_accel = temp - cfg.pole_mass * half_len * theta_ddot * cos / total_mass
    return state.theta_dot, theta_ddot, state.cart_v, cart_accel


def total_energy(state: PendulumState, cfg: BenchmarkConfig) -> float:
    """Kinetic plus potential energy of cart and pole (pole is a uniform rod)."""
    m, half_len = cfg.pole_mass, cfg.pole_half_length
    total_mass = cfg.cart_mass + m
    return (
        0.5 * total_mass * state.cart_v**2
        + m * half_len * state.cart_v * state.theta_dot * math.cos(state.theta)
        + (2.0 / 3.0) * m * half_len**2 * state.theta_dot**2
        + m * cfg.gravity * half_len * math.cos(state.theta)
    )


def rk4_step(state: PendulumState, force: float, cfg: BenchmarkConfig, dt: float | None = None) -> PendulumState:
    """Advance the plant by one step with the force held constant."""
    h = cfg.dt if dt is None else dt
    y = (state.theta, state.theta_dot, state.cart_x, state.cart_v)

    def derivs(y4):
        probe = PendulumState(*y4)
        d = dynamics(probe, force, cfg)
        return d

    k1 = derivs(y)
    k2 = derivs(tuple(yi + 0.5 * h * ki for yi, ki in zip(y, k1)))
    k3 = derivs(tuple(yi + 0.5 * h * ki for yi, ki in zip(y, k2)))
    k4 = derivs(tuple(yi + h * ki for yi, ki in zip(y, k3)))
    new = tuple(
        yi + h / 6.0 * (a + 2.0 * b + 2.0 * c + d)
        for yi, a, b, c, d in zip(y, k1, k2, k3, k4)
    )
    return PendulumState(*new)


def control_force(error: float, error_integral: float, error_derivative: float, cfg: BenchmarkConfig) -> float:
    """PID force on the cart, clamped to the actuator limit."""
    force = cfg.kp * error + cfg.ki * error_integral + cfg.kd * error_derivative
    return min(max(force, -cfg.force_limit), cfg.force_limit)


@dataclass
class Trajectory:
    """Per-step record of one closed-loop run; all arrays share one length."""

    dt: float
    time: np.ndarray
    truth: np.ndarray  # true pole angle
    s1: np.ndarray
    s2: np.ndarray
    estimate: np.ndarray  # feedback signal handed to the controller
    w1: np.ndarray  # nan outside the fused modes
    drift: np.ndarray  # drift correction magnitude, nan outside the fused modes
    prediction: np.ndarray  # nan when no forecast was available
    prediction_used: np.ndarray  # bool
    force: np.ndarray  # clamped controller output
    cart_x: np.ndarray
    cart_v: np.ndarray
    degenerate_steps: int = 0

    def __len__(self):
        return self.time.size


def simulate(
    cfg: BenchmarkConfig,
    mode: str,
    s1_spec: WidebandSensorSpec | None = None,
    s2_time_constant: float = 0.5,
    aggregator_cfg: AggregatorConfig | None = None,
    predictor_cfg: PredictorConfig | None = None,
    seed: int = 0,
) -> Trajectory:
    """Run the closed loop in the given feedback mode and record every step.

    The run seed and the wideband sensor's own seed jointly determine the
    noise stream and the predictor's initialization, so repeated calls with
    identical arguments reproduce the trajectory bit for bit.  A fall raises
    PendulumFellError carrying the steps recorded so far.
    """
    if mode not in FEEDBACK_MODES:
        raise ValueError(f"unknown feedback mode {mode!r}; pick one of {FEEDBACK_MODES}")
    if s1_spec is None:
        s1_spec = WidebandSensorSpec()
    if aggregator_cfg is None:
        aggregator_cfg = AggregatorConfig(sample_period=cfg.dt)
    if abs(aggregator_cfg.sample_period - cfg.dt) > 1e-12:
        raise ValueError("aggregator sample_period must match the simulation dt")

    children = np.random.SeedSequence([seed, s1_spec.seed]).spawn(2)
    noise_rng = np.random.default_rng(children[0])

    plant = PendulumState(theta=cfg.initial_theta)
    # the slow sensor has settled on the static plant before release
    s2_state = SlowSensorState(time_constant=s2_time_constant, output=cfg.initial_theta)
    agg_state = AggregatorState()
    online = None
    if mode == "fused_predictor":
        online = OnlinePredictor(
            predictor_cfg if predictor_cfg is not None else PredictorConfig(),
            np.random.default_rng(children[1]),
        )

    n_steps = round(cfg.duration / cfg.dt)
    cols = {
        name: np.empty(n_steps + 1)
        for name in ("time", "truth", "s1", "s2", "estimate", "w1", "drift",
                     "prediction", "force", "cart_x", "cart_v")
    }
    used_col = np.zeros(n_steps + 1, dtype=bool)

    def clip(k):
        return Trajectory(
            dt=cfg.dt,
            prediction_used=used_col[:k],
            degenerate_steps=online.degenerate_steps if online else 0,
            **{name: col[:k] for name, col in cols.items()},
        )

    integral = 0.0
    smoothed = None  # low-passed error feeding the derivative term
    prev_smoothed = None
    smooth_coeff = (
        1.0 if cfg.derivative_filter == 0.0 else 1.0 - math.exp(-cfg.dt / cfg.derivative_filter)
    )
    for k in range(n_steps + 1):
        t = k * cfg.dt
        truth = plant.theta
        s1_val = sample_wideband(s1_spec, truth, noise_rng)
        s2_val = step_lowpass(s2_state, truth, cfg.dt)

        w1 = drift = prediction = math.nan
        used = False
        if mode == "ideal":
            estimate = truth
        elif mode == "s1_only":
            estimate = s1_val
        elif mode == "s2_only":
            estimate = s2_val
        elif mode == "average":
            estimate = 0.5 * (s1_val + s2_val)
        else:
            forecast = online.prediction if online is not None else None
            rec = aggregator_step(agg_state, s1_val, s2_val, forecast, aggregator_cfg)
            estimate = rec.estimate
            w1, drift, used = rec.w1, rec.drift, rec.prediction_used
            if forecast is not None:
                prediction = forecast
        if online is not None:
            online.observe(estimate)

        error = estimate  # deviation from the zero-angle setpoint
        integral += error * cfg.dt
        if smoothed is None:
            smoothed = error
        else:
            smoothed += smooth_coeff * (error - smoothed)
        derivative = 0.0 if prev_smoothed is None else (smoothed - prev_smoothed) / cfg.dt
        force = control_force(error, integral, derivative, cfg)
        prev_smoothed = smoothed

        for name, value in (
            ("time", t), ("truth", truth), ("s1", s1_val), ("s2", s2_val),
            ("estimate", estimate), ("w1", w1), ("drift", drift),
            ("prediction", prediction), ("force", force),
            ("cart_x", plant.cart_x), ("cart_v", plant.cart_v),
        ):
            cols[name][k] = value
        used_col[k] = used

        if k == n_steps:
            break
        applied = force
        if cfg.disturbance_time <= t < cfg.disturbance_time + cfg.disturbance_duration:
            applied += cfg.disturbance_force
        plant = rk4_step(plant, applied, cfg)
        if abs(plant.theta) > FALL_ANGLE:
            raise PendulumFellError((k + 1) * cfg.dt, clip(k + 1))

    return clip(n_steps + 1)
