"""Models of the two complementary sensor classes.

The wideband sensor reports instantaneously but carries Gaussian noise and
a constant bias; the slow sensor is clean but sees the world through a
first-order lag.  The lag update uses the exact zero-order-hold coefficient
1 - exp(-dt/tau), which stays stable for any step-to-time-constant ratio.
"""

import math
from dataclasses import dataclass

import numpy as np


@dataclass
class WidebandSensorSpec:
    noise_variance: float = 0.01  # signal units squared
    bias: float = -0.02  # signal units
    seed: int = 0

    def __post_init__(self):
        if self.noise_variance < 0.0:
            raise ValueError("noise_variance must be non-negative")

    def make_rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)


def sample_wideband(spec: WidebandSensorSpec, truth: float, rng: np.random.Generator) -> float:
    """One reading: truth plus bias plus zero-mean Gaussian noise."""
    return truth + spec.bias + rng.normal(0.0, math.sqrt(spec.noise_variance))


@dataclass
class SlowSensorState:
    time_constant: float = 0.5  # seconds
    output: float = 0.0

    def __post_init__(self):
        if not self.time_constant > 0.0:
            raise ValueError("time_constant must be strictly positive")


def step_lowpass(state: SlowSensorState, truth: float, dt: float) -> float:
    """Advance the first-order lag by dt and return the new reading."""
    if not dt > 0.0:
        raise ValueError("dt must be strictly positive")
    coeff = 1.0 - math.exp(-dt / state.time_constant)
    state.output += coeff * (truth - state.output)
    return state.output
