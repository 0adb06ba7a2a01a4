"""Scalar performance criteria over a run's error signal."""

from dataclasses import dataclass

import numpy as np
from scipy.integrate import trapezoid


@dataclass
class MetricsReport:
    iae: float
    itae: float
    peak_to_peak_tail: float
    horizon: float  # seconds covered by the error signal


def iae(errors, dt: float) -> float:
    """Integral of |e(t)| by trapezoidal quadrature over the sample grid."""
    errors = np.asarray(errors, dtype=float)
    if errors.size == 0:
        raise ValueError("empty error sequence")
    if not dt > 0.0:
        raise ValueError("dt must be strictly positive")
    return float(trapezoid(np.abs(errors), dx=dt))


def itae(errors, dt: float) -> float:
    """Integral of t*|e(t)|, weighting late errors more heavily."""
    errors = np.asarray(errors, dtype=float)
    if errors.size == 0:
        raise ValueError("empty error sequence")
    if not dt > 0.0:
        raise ValueError("dt must be strictly positive")
    t = np.arange(errors.size) * dt
    return float(trapezoid(t * np.abs(errors), dx=dt))


def peak_to_peak_tail(signal, dt: float, tail_start: float) -> float:
    """Max minus min of the signal restricted to t >= tail_start."""
    signal = np.asarray(signal, dtype=float)
    if not dt > 0.0:
        raise ValueError("dt must be strictly positive")
    if tail_start >= signal.size * dt:
        raise ValueError("tail_start lies beyond the signal duration")
    first = max(int(np.ceil(tail_start / dt - 1e-9)), 0)
    tail = signal[first:]
    if tail.size == 0:
        raise ValueError("empty tail window")
    return float(tail.max() - tail.min())


def summarize(errors, dt: float, tail_start: float) -> MetricsReport:
    errors = np.asarray(errors, dtype=float)
    return MetricsReport(
        iae=iae(errors, dt),
        itae=itae(errors, dt),
        peak_to_peak_tail=peak_to_peak_tail(errors, dt, tail_start),
        horizon=(errors.size - 1) * dt,
    )
