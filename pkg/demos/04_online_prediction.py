"""Watching the predictor learn.

First on a clean sinusoid: the rule bank starts from the first window and
within a few hundred samples extrapolates better than simply repeating the
last value.  Then on the benchmark loop: the forecast rides the fused
estimate and gets gated out around the disturbance.
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from fuzzyfusion import OnlinePredictor, PredictorConfig
from fuzzyfusion.experiments import build_config
from fuzzyfusion.pendulum import simulate

out_dir = pathlib.Path(__file__).parent / "output"
out_dir.mkdir(exist_ok=True)

# --- sinusoid tracking -----------------------------------------------------
dt, period = 0.01, 2.0
n_steps, warmup = 3000, 500
predictor = OnlinePredictor(PredictorConfig(), np.random.default_rng(123))

signal = np.sin(2 * np.pi * np.arange(n_steps) * dt / period)
forecasts = np.full(n_steps, np.nan)
for k, x in enumerate(signal):
    if predictor.prediction is not None:
        forecasts[k] = predictor.prediction
    predictor.observe(x)

valid = np.isfinite(forecasts) & (np.arange(n_steps) > warmup)
err_pred = forecasts[valid] - signal[valid]
err_pers = signal[np.where(valid)[0] - 1] - signal[valid]
print(f"sinusoid one-step RMSE: predictor={np.sqrt(np.mean(err_pred**2)):.5f} "
      f"persistence={np.sqrt(np.mean(err_pers**2)):.5f}")

t = np.arange(n_steps) * dt
fig, axes = plt.subplots(2, 1, figsize=(10, 6), sharex=True)
axes[0].plot(t, signal, label="signal")
axes[0].plot(t, forecasts, lw=0.7, label="one-step forecast")
axes[0].set_ylabel("value")
axes[0].legend(fontsize=8)
axes[1].plot(t, forecasts - signal, lw=0.5)
axes[1].axvline(warmup * dt, color="gray", ls=":")
axes[1].set_ylabel("forecast error")
axes[1].set_xlabel("time (s)")
fig.suptitle("Online training on a sinusoid")
fig.tight_layout()
fig.savefig(out_dir / "predictor_sinusoid.png", dpi=120)

# --- on the closed loop ----------------------------------------------------
cfg = build_config()
traj = simulate(
    cfg.plant,
    "fused_predictor",
    s1_spec=cfg.wideband,
    s2_time_constant=cfg.s2_time_constant,
    aggregator_cfg=cfg.aggregator,
    predictor_cfg=cfg.predictor,
    seed=cfg.seed,
)
used = traj.prediction_used.mean()
print(f"benchmark: forecasts gated in on {used:.1%} of steps, "
      f"{traj.degenerate_steps} degenerate evaluations")

fig, ax = plt.subplots(figsize=(10, 4))
window = (traj.time >= 23.0) & (traj.time <= 29.0)
ax.plot(traj.time[window], traj.estimate[window], label="fused estimate")
ax.plot(traj.time[window], traj.prediction[window], lw=0.8, label="forecast for this step")
rejected = window & ~traj.prediction_used & np.isfinite(traj.prediction)
ax.plot(traj.time[rejected], traj.prediction[rejected], "rx", ms=4, label="gated out")
ax.axvline(cfg.plant.disturbance_time, color="red", ls=":", lw=1)
ax.set_xlabel("time (s)")
ax.set_ylabel("angle estimate (rad)")
ax.set_title("Forecasts around the disturbance")
ax.legend(fontsize=8)
fig.tight_layout()
fig.savefig(out_dir / "predictor_benchmark.png", dpi=120)
print(f"figures written to {out_dir}")
